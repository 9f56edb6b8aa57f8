#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "groupspectra/rng.hpp"

using namespace gs;

// Known-answer vectors published with the Random123 reference implementation.
TEST(Philox, KnownAnswers) {
  using A4 = std::array<std::uint32_t, 4>;
  EXPECT_EQ(philox4x32_10({0, 0, 0, 0}, {0, 0}), (A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
            (A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
            (A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Philox, SubstreamsAreReproducibleAndDistinct) {
  auto a = PhiloxStream::for_trial(42, 7), b = PhiloxStream::for_trial(42, 7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
  std::set<std::uint64_t> keys;
  for (std::uint64_t t = 0; t < 1000; ++t) keys.insert(substream_key(42, t));
  EXPECT_EQ(keys.size(), 1000u);
  EXPECT_NE(substream_key(1, 0), substream_key(2, 0));
}

TEST(Philox, UniformMoments) {
  auto s = PhiloxStream::for_trial(1, 0);
  const int n = 200000;
  double m1 = 0, m2 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = s.next_double();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    m1 += u;
    m2 += u * u;
  }
  m1 /= n;
  m2 /= n;
  EXPECT_NEAR(m1, 0.5, 5 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(m2, 1.0 / 3, 0.005);
}

TEST(Philox, NormalMoments) {
  auto s = PhiloxStream::for_trial(9, 3);
  const int n = 200000;
  double m1 = 0, m2 = 0, m4 = 0;
  for (int i = 0; i < n; ++i) {
    const double z = s.next_normal();
    m1 += z;
    m2 += z * z;
    m4 += z * z * z * z;
  }
  EXPECT_NEAR(m1 / n, 0.0, 5 / std::sqrt(double(n)));
  EXPECT_NEAR(m2 / n, 1.0, 0.02);
  EXPECT_NEAR(m4 / n, 3.0, 0.1);
}
