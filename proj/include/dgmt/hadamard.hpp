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

#ifndef DGMT_HADAMARD_HPP_
#define DGMT_HADAMARD_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace dgmt {

constexpr bool is_power_of_two(std::size_t n) {
  return n != 0 && (n & (n - 1)) == 0;
}

// Exponent k with 2^k == n. Requires is_power_of_two(n).
std::size_t log2_exact(std::size_t n);

// Largest power of two <= n (n >= 1).
std::size_t floor_power_of_two(std::size_t n);

// Smallest power of two >= n (n >= 1).
std::size_t ceil_power_of_two(std::size_t n);

// In-place normalized Walsh-Hadamard transform: v <- H_d v, where H_d is the
// Sylvester matrix scaled by 1/sqrt(d). The butterfly runs unnormalized and
// one 1/sqrt(d) scaling is applied at the end. Throws kDimension unless the
// length is a power of two.
void fwht_inplace(std::span<double> v);

std::vector<double> fwht(std::span<const double> v);

// Dense H_d built from the recursive block definition, row-major d x d.
// Limited to d <= 1024.
std::vector<double> hadamard_matrix(std::size_t d);

// H_d v by explicit matrix construction and O(d^2) multiplication. Test
// oracle for fwht.
std::vector<double> naive_hadamard_apply(std::span<const double> v);

}  // namespace dgmt

#endif  // DGMT_HADAMARD_HPP_
