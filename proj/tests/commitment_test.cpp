#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>

#include "eidolon/commitment.hpp"
#include "eidolon/rng.hpp"
#include "test_support.hpp"

using namespace eidolon;

TEST(Commitment, MatchesIndependentReference) {
  EXPECT_EQ(to_hex(commit(0, Bytes(16, 0))), oracle::read_text("commit_0_zero.hex").substr(0, 64));
}

TEST(Commitment, OpensOnlyToCommittedValue) {
  Rng rng(5);
  for (std::uint32_t alpha = 0; alpha < 20; ++alpha) {
    Bytes r(16);
    rng.fill(r);
    const Digest c = commit(alpha, r);
    EXPECT_TRUE(verify_opening(c, {alpha, r}));
    EXPECT_FALSE(verify_opening(c, {alpha + 1, r}));
    Bytes flipped = r;
    flipped[alpha % 16] ^= 0x01;
    EXPECT_FALSE(verify_opening(c, {alpha, flipped}));
  }
}

TEST(Commitment, RandomnessLengthIsEnforced) {
  try {
    commit(1, Bytes(15));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::bad_randomness_length);
  }
  EXPECT_FALSE(verify_opening(commit(1, Bytes(16)), {1, Bytes(17)}));
  CommitmentParams wide{256, 256};
  EXPECT_NO_THROW(commit(1, Bytes(32), wide));
  EXPECT_THROW((CommitmentParams{128, 512}.validate()), Error);
}

TEST(Commitment, HidingSmoke) {
  // Same colour, fresh randomness: digests never collide and bits look balanced.
  Rng rng(6);
  std::size_t ones = 0;
  std::vector<Digest> seen;
  for (int i = 0; i < 200; ++i) {
    Bytes r(16);
    rng.fill(r);
    const Digest d = commit(2, r);
    for (auto b : d) ones += static_cast<std::size_t>(__builtin_popcount(b));
    seen.push_back(d);
  }
  std::sort(seen.begin(), seen.end());
  EXPECT_EQ(std::adjacent_find(seen.begin(), seen.end()), seen.end());
  const double frac = static_cast<double>(ones) / (200.0 * 256.0);
  EXPECT_NEAR(frac, 0.5, 0.01);
}

TEST(Examples, DeterministicAndCollisionFree) {
  Rng rng(20);
  std::vector<Digest> digests;
  for (int i = 0; i < 10000; ++i) {
    Bytes r(16);
    rng.fill(r);
    const Digest d = commit(4, r);
    EXPECT_EQ(d, commit(4, r));
    digests.push_back(d);
  }
  std::sort(digests.begin(), digests.end());
  EXPECT_EQ(std::adjacent_find(digests.begin(), digests.end()), digests.end());
}

TEST(Examples, EveryRandomnessBitIsBinding) {
  Rng rng(21);
  Bytes r(16);
  rng.fill(r);
  const Digest d = commit(2, r);
  EXPECT_TRUE(verify_opening(d, {2, r}));
  EXPECT_FALSE(verify_opening(d, {3, r}));
  for (std::size_t bit = 0; bit < 128; ++bit) {
    Bytes flipped = r;
    flipped[bit / 8] ^= static_cast<std::uint8_t>(0x80u >> (bit % 8));
    EXPECT_FALSE(verify_opening(d, {2, flipped})) << "bit " << bit;
  }
}

TEST(Examples, DigestBytesDoNotRevealTheColor) {
  // Homogeneity of (byte position, high nibble) counts between alpha = 0 and alpha = 1.
  Rng rng(22);
  std::vector<double> a(32 * 16, 0.0), b(32 * 16, 0.0);
  for (int i = 0; i < 10000; ++i) {
    for (std::uint32_t alpha : {0u, 1u}) {
      Bytes r(16);
      rng.fill(r);
      const Digest d = commit(alpha, r);
      auto& cells = alpha == 0 ? a : b;
      for (std::size_t pos = 0; pos < 32; ++pos) cells[pos * 16 + (d[pos] >> 4)] += 1.0;
    }
  }
  double stat = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double e = (a[i] + b[i]) / 2.0;
    stat += (a[i] - e) * (a[i] - e) / e + (b[i] - e) * (b[i] - e) / e;
  }
  // Each position contributes 15 degrees of freedom.
  boost::math::chi_squared_distribution<double> dist(32.0 * 15.0);
  EXPECT_GT(boost::math::cdf(boost::math::complement(dist, stat)), 0.001);
}
