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

#ifndef DGMT_SHARED_RANDOMNESS_HPP_
#define DGMT_SHARED_RANDOMNESS_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dgmt/rng.hpp"

namespace dgmt {

using BitVector = std::vector<std::uint8_t>;  // one 0/1 entry per bit

// A finite budget of public random bits, drawn strictly sequentially. Every
// draw is metered; asking for more than remains throws kBudgetExhausted and
// leaves the seed untouched.
class PublicSeed {
 public:
  PublicSeed() = default;
  explicit PublicSeed(BitVector bits);

  // s bits taken from a generator seeded with `key`. The key is the only
  // state needed to replay the seed.
  static PublicSeed from_key(std::uint64_t key, std::size_t s);

  // The low `s` bits of `value`, most significant first (s <= 64). Used to
  // enumerate the whole seed space in exhaustive tests.
  static PublicSeed from_integer(std::uint64_t value, std::size_t s);

  BitVector draw_bits(std::size_t count);

  std::size_t size() const { return bits_.size(); }
  std::size_t consumed() const { return consumed_; }
  std::size_t remaining() const { return bits_.size() - consumed_; }
  const BitVector& bits() const { return bits_; }

 private:
  BitVector bits_;
  std::size_t consumed_ = 0;
};

// Arithmetic in GF(2^k), 1 <= k <= 16. Elements are the integers
// [0, 2^k) read as polynomials over GF(2); reduction uses a fixed
// irreducible polynomial per k.
class Gf2k {
 public:
  static constexpr unsigned kMaxDegree = 16;

  explicit Gf2k(unsigned k);

  unsigned degree() const { return k_; }
  std::uint32_t order() const { return 1U << k_; }
  std::uint32_t modulus() const { return modulus_; }

  static std::uint32_t add(std::uint32_t a, std::uint32_t b) { return a ^ b; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;

  // Irreducible modulus for degree k, including the x^k term.
  static std::uint32_t irreducible(unsigned k);

 private:
  unsigned k_;
  std::uint32_t modulus_;
};

struct RademacherBlockSigns {
  std::vector<int> signs;  // each +1 or -1
  std::size_t bits_consumed = 0;
};

// b signs that are exactly 4-wise independent and uniform over the seed.
// Draws 4*log2(b) bits (none when b == 1) as the coefficients of a cubic
// over GF(b), evaluates it at the field elements 0..b-1 and maps the lowest
// bit of each value to a sign (0 -> +1, 1 -> -1). Coefficients are read
// constant term first, each one most significant bit first.
RademacherBlockSigns fourwise_rademacher(PublicSeed& seed, std::size_t b);

}  // namespace dgmt

#endif  // DGMT_SHARED_RANDOMNESS_HPP_
