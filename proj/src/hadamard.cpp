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

#include "dgmt/hadamard.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <string>

#include "dgmt/errors.hpp"

namespace dgmt {
namespace {

constexpr std::size_t kMaxDenseDimension = 1024;

// 2^(-k/2) for every k a size_t dimension can have.
const std::array<double, 64> kInvSqrtPow2 = [] {
  std::array<double, 64> t{};
  for (int k = 0; k < 64; ++k) t[k] = 1.0 / std::sqrt(std::ldexp(1.0, k));
  return t;
}();

void require_power_of_two(std::size_t n, const char* what) {
  if (!is_power_of_two(n)) {
    fail(Errc::kDimension, std::string(what) + ": length " + std::to_string(n) +
                               " is not a power of two");
  }
}

}  // namespace

std::size_t log2_exact(std::size_t n) {
  require_power_of_two(n, "log2_exact");
  return static_cast<std::size_t>(std::countr_zero(n));
}

std::size_t floor_power_of_two(std::size_t n) {
  if (n == 0) fail(Errc::kParameter, "floor_power_of_two: n must be >= 1");
  return std::bit_floor(n);
}

std::size_t ceil_power_of_two(std::size_t n) {
  if (n == 0) fail(Errc::kParameter, "ceil_power_of_two: n must be >= 1");
  return std::bit_ceil(n);
}

void fwht_inplace(std::span<double> v) {
  const std::size_t d = v.size();
  require_power_of_two(d, "fwht");
  double* x = v.data();
  for (std::size_t h = 1; h < d; h <<= 1) {
    for (std::size_t i = 0; i < d; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = x[j];
        const double b = x[j + h];
        x[j] = a + b;
        x[j + h] = a - b;
      }
    }
  }
  if (d > 1) {
    const double scale = kInvSqrtPow2[std::countr_zero(d)];
    for (std::size_t i = 0; i < d; ++i) x[i] *= scale;
  }
}

std::vector<double> fwht(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  fwht_inplace(out);
  return out;
}

std::vector<double> hadamard_matrix(std::size_t d) {
  require_power_of_two(d, "hadamard_matrix");
  if (d > kMaxDenseDimension) {
    fail(Errc::kDimension, "hadamard_matrix: dense construction limited to d <= 1024");
  }
  std::vector<double> h{1.0};
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t n = 1; n < d; n <<= 1) {
    // H_{2n} = 1/sqrt(2) [H_n H_n; H_n -H_n]
    std::vector<double> next(4 * n * n);
    const std::size_t m = 2 * n;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        const double e = h[r * n + c] * inv_sqrt2;
        next[r * m + c] = e;
        next[r * m + c + n] = e;
        next[(r + n) * m + c] = e;
        next[(r + n) * m + c + n] = -e;
      }
    }
    h = std::move(next);
  }
  return h;
}

std::vector<double> naive_hadamard_apply(std::span<const double> v) {
  const std::size_t d = v.size();
  const std::vector<double> h = hadamard_matrix(d);
  std::vector<double> out(d, 0.0);
  for (std::size_t r = 0; r < d; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < d; ++c) acc += h[r * d + c] * v[c];
    out[r] = acc;
  }
  return out;
}

}  // namespace dgmt
