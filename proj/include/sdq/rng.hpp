#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <string_view>

namespace sdq {

// Counter-based generator (Philox-2x64, 10 rounds). The output sequence is a
// pure function of (key, counter), so streams are reproducible on every
// platform and can be split by label without coordination.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed = 0) : key_(seed) {}

  // Independent stream keyed by this stream's key and a label. Does not
  // advance this stream.
  RngStream substream(std::string_view label) const;
  RngStream substream(std::string_view label, std::uint64_t index) const;

  std::uint64_t seed() const { return key_; }

  std::uint64_t next_u64();
  result_type operator()() { return next_u64(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1].
  double uniform_open_zero();
  double uniform(double lo, double hi);
  // Unbiased integer in [0, bound).
  std::uint64_t uniform_index(std::uint64_t bound);
  // Standard normal via Box-Muller.
  double gaussian();
  // ±1 with equal probability.
  double rademacher();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::array<std::uint64_t, 2> block_{};
  int available_ = 0;
  double spare_gaussian_ = 0.0;
  bool has_spare_ = false;
};

// One Philox-2x64-10 block: exposed for tests and for seed derivation.
std::array<std::uint64_t, 2> philox2x64(std::array<std::uint64_t, 2> counter,
                                        std::uint64_t key);

// Stable 64-bit label hash (FNV-1a).
std::uint64_t hash_label(std::string_view label);

}  // namespace sdq
