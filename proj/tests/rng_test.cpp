#include "sdq/rng.hpp"

#include <cmath>
#include <set>

#include <gtest/gtest.h>

namespace sdq {
namespace {

// Known-answer vectors published with the Random123 reference
// implementation of Philox-2x64-10.
TEST(Philox, KnownAnswers) {
  EXPECT_EQ(philox2x64({0, 0}, 0),
            (std::array<std::uint64_t, 2>{0xca00a0459843d731ULL,
                                          0x66c24222c9a845b5ULL}));
  EXPECT_EQ(philox2x64({~0ULL, ~0ULL}, ~0ULL),
            (std::array<std::uint64_t, 2>{0x65b021d60cd8310fULL,
                                          0x4d02f3222f86df20ULL}));
  EXPECT_EQ(philox2x64({0x243f6a8885a308d3ULL, 0x13198a2e03707344ULL},
                       0xa4093822299f31d0ULL),
            (std::array<std::uint64_t, 2>{0x0a5e742c2997341cULL,
                                          0xb0f883d38000de5dULL}));
}

TEST(RngStream, SameSeedSameSequence) {
  RngStream a(42), b(42);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(RngStream, SubstreamsAreDistinctAndStable) {
  const RngStream root(7);
  RngStream x = root.substream("matrix");
  RngStream y = root.substream("signal");
  RngStream x2 = root.substream("matrix");
  RngStream i0 = root.substream("trial", 0);
  RngStream i1 = root.substream("trial", 1);
  std::set<std::uint64_t> firsts;
  for (RngStream* s : {&x, &y, &i0, &i1}) firsts.insert(s->next_u64());
  EXPECT_EQ(firsts.size(), 4u);
  // Deriving a substream does not advance or depend on the parent's state.
  RngStream advanced = root;
  advanced.next_u64();
  EXPECT_EQ(x2.next_u64(), advanced.substream("matrix").next_u64());
}

TEST(RngStream, UniformRanges) {
  RngStream rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double v = rng.uniform_open_zero();
    ASSERT_GT(v, 0.0);
    ASSERT_LE(v, 1.0);
    ASSERT_LT(rng.uniform_index(7), 7u);
  }
}

TEST(RngStream, GaussianMoments) {
  RngStream rng(11);
  const int n = 200000;
  double s1 = 0.0, s2 = 0.0, s4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = rng.gaussian();
    s1 += g;
    s2 += g * g;
    s4 += g * g * g * g;
  }
  EXPECT_NEAR(s1 / n, 0.0, 0.01);
  EXPECT_NEAR(s2 / n, 1.0, 0.01);
  EXPECT_NEAR(s4 / n, 3.0, 0.06);
}

TEST(RngStream, RademacherBalanced) {
  RngStream rng(12);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double r = rng.rademacher();
    ASSERT_TRUE(r == 1.0 || r == -1.0);
    sum += r;
  }
  EXPECT_LT(std::abs(sum) / 100000, 0.01);
}

}  // namespace
}  // namespace sdq
