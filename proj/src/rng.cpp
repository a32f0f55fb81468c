#include "sdq/rng.hpp"

#include <cmath>
#include <numbers>

namespace sdq {
namespace {
__extension__ typedef unsigned __int128 u128;

constexpr std::uint64_t kMultiplier = 0xD2B74407B1CE6E93ULL;
constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ULL;

}  // namespace

std::array<std::uint64_t, 2> philox2x64(std::array<std::uint64_t, 2> ctr,
                                        std::uint64_t key) {
  for (int round = 0; round < 10; ++round) {
    const u128 prod =
        static_cast<u128>(kMultiplier) * ctr[0];
    const auto hi = static_cast<std::uint64_t>(prod >> 64);
    const auto lo = static_cast<std::uint64_t>(prod);
    ctr = {hi ^ key ^ ctr[1], lo};
    key += kWeyl;
  }
  return ctr;
}

std::uint64_t hash_label(std::string_view label) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

RngStream RngStream::substream(std::string_view label) const {
  return RngStream(philox2x64({hash_label(label), 0x5EEDULL}, key_)[0]);
}

RngStream RngStream::substream(std::string_view label,
                               std::uint64_t index) const {
  return RngStream(philox2x64({hash_label(label), index}, ~key_)[0]);
}

std::uint64_t RngStream::next_u64() {
  if (available_ == 0) {
    block_ = philox2x64({counter_++, 0}, key_);
    available_ = 2;
  }
  return block_[2 - available_--];
}

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_open_zero() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

std::uint64_t RngStream::uniform_index(std::uint64_t bound) {
  // Lemire's multiply-and-reject.
  std::uint64_t x = next_u64();
  u128 m = static_cast<u128>(x) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      x = next_u64();
      m = static_cast<u128>(x) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double RngStream::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_gaussian_;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform_open_zero()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  spare_gaussian_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

double RngStream::rademacher() {
  return (next_u64() >> 63) ? 1.0 : -1.0;
}

}  // namespace sdq
