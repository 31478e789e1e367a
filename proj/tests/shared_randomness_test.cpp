// Copyright 2026 The dgmt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dgmt/shared_randomness.hpp"

#include <bit>
#include <cstdint>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "dgmt/errors.hpp"
#include "oracles.hpp"

namespace dgmt {
namespace {

TEST(PublicSeed, DrawAdvancesCounter) {
  PublicSeed seed = PublicSeed::from_key(5, 28);
  const auto bits = seed.draw_bits(4);
  EXPECT_EQ(bits.size(), 4u);
  EXPECT_EQ(seed.consumed(), 4u);
  EXPECT_EQ(seed.remaining(), 24u);
}

TEST(PublicSeed, OverdrawThrowsWithoutConsuming) {
  PublicSeed seed = PublicSeed::from_key(5, 3);
  try {
    seed.draw_bits(4);
    FAIL() << "expected budget exhaustion";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kBudgetExhausted);
  }
  EXPECT_EQ(seed.consumed(), 0u);
  EXPECT_EQ(seed.draw_bits(3).size(), 3u);
}

TEST(PublicSeed, ReplayIsIdentical) {
  PublicSeed a = PublicSeed::from_key(99, 200);
  PublicSeed b = PublicSeed::from_key(99, 200);
  EXPECT_EQ(a.draw_bits(77), b.draw_bits(77));
  EXPECT_EQ(a.draw_bits(123), b.draw_bits(123));
  EXPECT_NE(PublicSeed::from_key(1, 64).bits(), PublicSeed::from_key(2, 64).bits());
}

TEST(PublicSeed, FromIntegerIsMostSignificantFirst) {
  const auto seed = PublicSeed::from_integer(0b1011, 6);
  EXPECT_EQ(seed.bits(), (BitVector{0, 0, 1, 0, 1, 1}));
  EXPECT_THROW(PublicSeed::from_integer(0, 65), Error);
}

TEST(PublicSeed, RejectsNonBinaryBits) { EXPECT_THROW(PublicSeed(BitVector{0, 2}), Error); }

// Property: consumed equals the sum of the draw sizes.
TEST(PublicSeedProperty, BudgetConservation) {
  Rng rng(3);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t s = rng() % 300;
    PublicSeed seed = PublicSeed::from_key(rng(), s);
    std::size_t total = 0;
    for (int k = 0; k < 10; ++k) {
      const std::size_t c = rng() % 40;
      if (total + c <= s) {
        seed.draw_bits(c);
        total += c;
      } else {
        EXPECT_THROW(seed.draw_bits(c), Error);
      }
      ASSERT_EQ(seed.consumed(), total);
      ASSERT_LE(seed.consumed(), seed.size());
    }
  }
}

TEST(Gf2k, TableEntriesAreIrreducible) {
  for (unsigned k = 1; k <= Gf2k::kMaxDegree; ++k) {
    const std::uint32_t m = Gf2k::irreducible(k);
    EXPECT_EQ(std::bit_width(m), static_cast<int>(k) + 1) << "k=" << k;
    EXPECT_TRUE(oracle::is_irreducible(m)) << "k=" << k;
  }
  EXPECT_THROW(Gf2k(0), Error);
  EXPECT_THROW(Gf2k(17), Error);
}

TEST(Gf2k, MultiplicationMatchesLongDivision) {
  Rng rng(4);
  for (unsigned k = 1; k <= Gf2k::kMaxDegree; ++k) {
    const Gf2k f(k);
    for (int rep = 0; rep < 300; ++rep) {
      const auto a = static_cast<std::uint32_t>(rng() % f.order());
      const auto b = static_cast<std::uint32_t>(rng() % f.order());
      ASSERT_EQ(f.mul(a, b), oracle::gf_mul(a, b, f.modulus())) << "k=" << k;
    }
  }
}

TEST(Gf2k, EveryNonzeroElementIsInvertible) {
  for (unsigned k = 1; k <= 8; ++k) {
    const Gf2k f(k);
    for (std::uint32_t a = 1; a < f.order(); ++a) {
      bool found = false;
      for (std::uint32_t b = 1; b < f.order() && !found; ++b) found = f.mul(a, b) == 1;
      ASSERT_TRUE(found) << "k=" << k << " a=" << a;
    }
  }
}

TEST(FourwiseRademacher, SingleBlockUsesNoBits) {
  PublicSeed seed;
  const auto r = fourwise_rademacher(seed, 1);
  EXPECT_EQ(r.signs, std::vector<int>{1});
  EXPECT_EQ(r.bits_consumed, 0u);
}

TEST(FourwiseRademacher, RejectsBadBlockCounts) {
  PublicSeed seed = PublicSeed::from_key(1, 100);
  EXPECT_THROW(fourwise_rademacher(seed, 3), Error);
  EXPECT_THROW(fourwise_rademacher(seed, std::size_t{1} << 17), Error);
  EXPECT_EQ(seed.consumed(), 0u);
  PublicSeed small = PublicSeed::from_key(1, 7);
  EXPECT_THROW(fourwise_rademacher(small, 4), Error);
}

TEST(FourwiseRademacher, MatchesPolynomialOracle) {
  Rng rng(8);
  for (unsigned k = 1; k <= 10; ++k) {
    const std::size_t b = std::size_t{1} << k;
    for (int rep = 0; rep < 20; ++rep) {
      PublicSeed seed = PublicSeed::from_key(rng(), 4 * k);
      const BitVector bits = seed.bits();
      const auto r = fourwise_rademacher(seed, b);
      ASSERT_EQ(r.bits_consumed, 4 * k);
      std::uint32_t c[4] = {0, 0, 0, 0};
      for (unsigned j = 0; j < 4; ++j) {
        for (unsigned i = 0; i < k; ++i) c[j] = (c[j] << 1) | bits[j * k + i];
      }
      const std::uint32_t m = Gf2k::irreducible(k);
      for (std::uint32_t x = 0; x < b; ++x) {
        const std::uint32_t x2 = oracle::gf_mul(x, x, m);
        const std::uint32_t x3 = oracle::gf_mul(x2, x, m);
        const std::uint32_t v = c[0] ^ oracle::gf_mul(c[1], x, m) ^ oracle::gf_mul(c[2], x2, m) ^
                                oracle::gf_mul(c[3], x3, m);
        ASSERT_EQ(r.signs[x], (v & 1u) ? -1 : 1);
      }
    }
  }
}

// Every seed of the 8-bit space for b = 4: each sign is +1 for exactly 128.
TEST(FourwiseRademacher, FourBlocksBalancedMarginals) {
  std::vector<int> plus(4, 0);
  std::int64_t fourth = 0;
  for (std::uint64_t v = 0; v < 256; ++v) {
    PublicSeed seed = PublicSeed::from_integer(v, 8);
    const auto r = fourwise_rademacher(seed, 4);
    for (int i = 0; i < 4; ++i) plus[i] += r.signs[i] > 0;
    fourth += r.signs[0] * r.signs[1] * r.signs[2] * r.signs[3];
  }
  EXPECT_EQ(plus, (std::vector<int>{128, 128, 128, 128}));
  EXPECT_EQ(fourth, 0);
}

// Exhaustive 4-wise independence by integer counting: every product over
// 1, 2, 3 or 4 distinct indices sums to 0 over the seed space.
TEST(FourwiseRademacher, ExhaustiveJointMomentsVanish) {
  for (std::size_t b : {2u, 4u, 8u}) {
    const unsigned k = static_cast<unsigned>(std::countr_zero(b));
    const std::uint64_t seeds = std::uint64_t{1} << (4 * k);
    std::vector<std::vector<int>> table;
    table.reserve(seeds);
    for (std::uint64_t v = 0; v < seeds; ++v) {
      PublicSeed seed = PublicSeed::from_integer(v, 4 * k);
      table.push_back(fourwise_rademacher(seed, b).signs);
    }
    for (std::uint32_t mask = 1; mask < (1u << b); ++mask) {
      if (std::popcount(mask) > 4) continue;
      std::int64_t sum = 0;
      for (const auto& s : table) {
        int prod = 1;
        for (std::size_t i = 0; i < b; ++i) {
          if ((mask >> i) & 1u) prod *= s[i];
        }
        sum += prod;
      }
      ASSERT_EQ(sum, 0) << "b=" << b << " mask=" << mask;
    }
  }
}

}  // namespace
}  // namespace dgmt
