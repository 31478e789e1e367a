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

// Slow reference implementations used only by tests. None of them call into
// the code they check.

#ifndef DGMT_TESTS_ORACLES_HPP_
#define DGMT_TESTS_ORACLES_HPP_

#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "dgmt/rng.hpp"

namespace dgmt::oracle {

// Sylvester entry (H_d)_{ij} = (-1)^{popcount(i & j)} / sqrt(d).
inline double sylvester_entry(std::size_t i, std::size_t j, std::size_t d) {
  const double sign = (std::popcount(i & j) % 2 == 0) ? 1.0 : -1.0;
  return sign / std::sqrt(static_cast<double>(d));
}

// (H_d diag(block signs) x), dense.
inline std::vector<double> dense_brht(const std::vector<double>& x, std::size_t L,
                                      const std::vector<int>& signs) {
  const std::size_t d = x.size();
  std::vector<double> out(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      out[i] += sylvester_entry(i, j, d) * signs[j / L] * x[j];
    }
  }
  return out;
}

inline std::vector<double> dense_hadamard(const std::vector<double>& x) {
  return dense_brht(x, x.size(), {1});
}

// T by the O(n^2 dim) double sum over ordered pairs k1 != k2.
inline double pairwise_collision(const std::vector<std::vector<int>>& rows) {
  const std::size_t n = rows.size();
  const std::size_t dim = rows.front().size();
  double total = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (a != b) total += (rows[a][i] - 0.5) * (rows[b][i] - 0.5);
      }
    }
  }
  return total / (static_cast<double>(n) * static_cast<double>(n - 1));
}

// Exact mean and variance of T for dim = 1 and independent bits with
// Pr[X^(k) = 1] = p[k], by enumerating all 2^n outcomes.
inline std::pair<double, double> exhaustive_t_moments(const std::vector<double>& p) {
  const std::size_t n = p.size();
  double m1 = 0.0;
  double m2 = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double prob = 1.0;
    std::vector<std::vector<int>> rows(n, std::vector<int>(1));
    for (std::size_t k = 0; k < n; ++k) {
      const int bit = (mask >> k) & 1u;
      rows[k][0] = bit;
      prob *= bit ? p[k] : 1.0 - p[k];
    }
    const double t = pairwise_collision(rows);
    m1 += prob * t;
    m2 += prob * t * t;
  }
  return {m1, m2 - m1 * m1};
}

// Carry-less polynomial product and remainder over GF(2).
inline std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  for (int i = 0; i < 32; ++i) {
    if ((b >> i) & 1u) r ^= a << i;
  }
  return r;
}

inline std::uint64_t polymod(std::uint64_t a, std::uint64_t m) {
  const int dm = 63 - std::countl_zero(m);
  while (a != 0 && 63 - std::countl_zero(a) >= dm) a ^= m << ((63 - std::countl_zero(a)) - dm);
  return a;
}

// Trial division by every polynomial of degree 1..deg/2.
inline bool is_irreducible(std::uint64_t poly) {
  const int deg = 63 - std::countl_zero(poly);
  for (std::uint64_t q = 2; q < (1ull << (deg / 2 + 1)); ++q) {
    if (polymod(poly, q) == 0) return false;
  }
  return true;
}

// Field product via schoolbook multiplication then long division.
inline std::uint32_t gf_mul(std::uint32_t a, std::uint32_t b, std::uint32_t modulus) {
  return static_cast<std::uint32_t>(polymod(clmul(a, b), modulus));
}

inline std::vector<double> gaussian_vector(std::size_t d, Rng& rng) {
  // Box-Muller keeps the oracle independent of the library's sampler.
  std::vector<double> out(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    out[i] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }
  return out;
}

inline double norm2(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

}  // namespace dgmt::oracle

#endif  // DGMT_TESTS_ORACLES_HPP_
