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

#include <array>
#include <string>
#include <utility>

#include "dgmt/errors.hpp"
#include "dgmt/hadamard.hpp"

namespace dgmt {
namespace {

// Index k holds an irreducible polynomial of degree k over GF(2).
constexpr std::array<std::uint32_t, Gf2k::kMaxDegree + 1> kIrreducible = {
    0x0,      // unused
    0x3,      // x + 1
    0x7,      // x^2 + x + 1
    0xB,      // x^3 + x + 1
    0x13,     // x^4 + x + 1
    0x25,     // x^5 + x^2 + 1
    0x43,     // x^6 + x + 1
    0x83,     // x^7 + x + 1
    0x11B,    // x^8 + x^4 + x^3 + x + 1
    0x211,    // x^9 + x^4 + 1
    0x409,    // x^10 + x^3 + 1
    0x805,    // x^11 + x^2 + 1
    0x1053,   // x^12 + x^6 + x^4 + x + 1
    0x201B,   // x^13 + x^4 + x^3 + x + 1
    0x4443,   // x^14 + x^10 + x^6 + x + 1
    0x8003,   // x^15 + x + 1
    0x1100B,  // x^16 + x^12 + x^3 + x + 1
};

std::uint32_t read_msb_first(const BitVector& bits, std::size_t offset, unsigned width) {
  std::uint32_t value = 0;
  for (unsigned i = 0; i < width; ++i) value = (value << 1) | bits[offset + i];
  return value;
}

}  // namespace

PublicSeed::PublicSeed(BitVector bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) fail(Errc::kParameter, "PublicSeed: bits must be 0 or 1");
  }
}

PublicSeed PublicSeed::from_key(std::uint64_t key, std::size_t s) {
  Rng rng(key);
  BitVector bits(s);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < s; ++i) {
    if (i % 64 == 0) word = rng();
    bits[i] = static_cast<std::uint8_t>((word >> (63 - i % 64)) & 1U);
  }
  return PublicSeed(std::move(bits));
}

PublicSeed PublicSeed::from_integer(std::uint64_t value, std::size_t s) {
  if (s > 64) fail(Errc::kParameter, "PublicSeed::from_integer: s must be <= 64");
  BitVector bits(s);
  for (std::size_t i = 0; i < s; ++i) {
    bits[i] = static_cast<std::uint8_t>((value >> (s - 1 - i)) & 1U);
  }
  return PublicSeed(std::move(bits));
}

BitVector PublicSeed::draw_bits(std::size_t count) {
  if (count > remaining()) {
    fail(Errc::kBudgetExhausted,
         "public seed: requested " + std::to_string(count) + " bits but only " +
             std::to_string(remaining()) + " of " + std::to_string(size()) +
             " remain");
  }
  BitVector out(bits_.begin() + static_cast<std::ptrdiff_t>(consumed_),
                bits_.begin() + static_cast<std::ptrdiff_t>(consumed_ + count));
  consumed_ += count;
  return out;
}

Gf2k::Gf2k(unsigned k) : k_(k), modulus_(irreducible(k)) {}

std::uint32_t Gf2k::irreducible(unsigned k) {
  if (k < 1 || k > kMaxDegree) {
    fail(Errc::kDimension, "GF(2^k): degree " + std::to_string(k) +
                               " outside the supported range [1, 16]");
  }
  return kIrreducible[k];
}

std::uint32_t Gf2k::mul(std::uint32_t a, std::uint32_t b) const {
  std::uint32_t product = 0;
  const std::uint32_t top = 1U << k_;
  while (b != 0) {
    if (b & 1U) product ^= a;
    b >>= 1;
    a <<= 1;
    if (a & top) a ^= modulus_;
  }
  return product;
}

RademacherBlockSigns fourwise_rademacher(PublicSeed& seed, std::size_t b) {
  if (!is_power_of_two(b)) {
    fail(Errc::kDimension,
         "fourwise_rademacher: block count " + std::to_string(b) + " is not a power of two");
  }
  RademacherBlockSigns out;
  if (b == 1) {
    out.signs = {+1};
    return out;
  }
  const auto k = static_cast<unsigned>(log2_exact(b));
  const Gf2k field(k);  // validates k <= 16 before any bits are drawn
  const BitVector bits = seed.draw_bits(4 * k);
  std::array<std::uint32_t, 4> coeff{};
  for (unsigned j = 0; j < 4; ++j) coeff[j] = read_msb_first(bits, j * k, k);

  out.signs.resize(b);
  for (std::uint32_t x = 0; x < b; ++x) {
    // Horner: ((c3 x + c2) x + c1) x + c0
    std::uint32_t value = coeff[3];
    for (int j = 2; j >= 0; --j) value = Gf2k::add(field.mul(value, x), coeff[j]);
    out.signs[x] = (value & 1U) ? -1 : +1;
  }
  out.bits_consumed = 4 * k;
  return out;
}

}  // namespace dgmt
