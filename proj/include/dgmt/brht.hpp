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

#ifndef DGMT_BRHT_HPP_
#define DGMT_BRHT_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "dgmt/rng.hpp"
#include "dgmt/shared_randomness.hpp"

namespace dgmt {

// A sampled blockwise randomized Hadamard transform R = H_d D, where D holds
// one sign per length-L block. Immutable once sampled.
class BrhtSpec {
 public:
  BrhtSpec(std::size_t d, std::size_t block_length, RademacherBlockSigns signs);

  std::size_t dimension() const { return d_; }
  std::size_t block_length() const { return block_length_; }
  std::size_t block_count() const { return d_ / block_length_; }
  const std::vector<int>& signs() const { return signs_.signs; }
  std::size_t bits_consumed() const { return signs_.bits_consumed; }

  // x <- R x over the full vector. `x` must have length d.
  void apply_inplace(std::span<double> x) const;

 private:
  std::size_t d_;
  std::size_t block_length_;
  RademacherBlockSigns signs_;
};

struct CompressionProbeResult {
  double z = 0.0;          // squared norm of the first t*L coordinates of R mu
  double threshold = 0.0;  // (t*L / (100*d)) * ||mu||^2
};

// Samples a (d, L)-BRHT, drawing exactly 4*log2(d/L) bits from `seed`.
BrhtSpec sample_brht(PublicSeed& seed, std::size_t d, std::size_t block_length);

// First `keep` coordinates of R x.
std::vector<double> brht_apply(const BrhtSpec& spec, std::span<const double> x,
                               std::size_t keep);

// Allocation-free variant: copies x into `workspace` (length d), transforms it
// there and returns a view of the first `keep` entries.
std::span<const double> brht_apply(const BrhtSpec& spec, std::span<const double> x,
                                   std::size_t keep, std::span<double> workspace);

CompressionProbeResult compression_probe(const BrhtSpec& spec, std::span<const double> mu,
                                         std::size_t t);

// Embeds x into `padded_dimension` coordinates. The tail is filled with fresh
// N(0,1) draws so a padded G(mu, I_d) sample is exactly G((mu, 0), I_d').
std::vector<double> pad_sample(std::span<const double> x, std::size_t padded_dimension,
                               Rng& rng);

// Zero-extends a mean vector; the norm is unchanged.
std::vector<double> pad_mean(std::span<const double> mu, std::size_t padded_dimension);

}  // namespace dgmt

#endif  // DGMT_BRHT_HPP_
