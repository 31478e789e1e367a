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

#include "dgmt/brht.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include <boost/random/normal_distribution.hpp>

#include "dgmt/errors.hpp"
#include "dgmt/hadamard.hpp"

namespace dgmt {
namespace {

void check_shape(std::size_t d, std::size_t block_length) {
  if (!is_power_of_two(d) || !is_power_of_two(block_length)) {
    fail(Errc::kDimension, "BRHT: d=" + std::to_string(d) + " and L=" +
                               std::to_string(block_length) + " must be powers of two");
  }
  if (block_length > d) {
    fail(Errc::kDimension, "BRHT: block length " + std::to_string(block_length) +
                               " exceeds dimension " + std::to_string(d));
  }
}

}  // namespace

BrhtSpec::BrhtSpec(std::size_t d, std::size_t block_length, RademacherBlockSigns signs)
    : d_(d), block_length_(block_length), signs_(std::move(signs)) {
  check_shape(d, block_length);
  if (signs_.signs.size() != d / block_length) {
    fail(Errc::kDimension, "BRHT: expected " + std::to_string(d / block_length) +
                               " block signs, got " + std::to_string(signs_.signs.size()));
  }
}

void BrhtSpec::apply_inplace(std::span<double> x) const {
  if (x.size() != d_) {
    fail(Errc::kDimension, "BRHT: input length " + std::to_string(x.size()) +
                               " does not match d=" + std::to_string(d_));
  }
  for (std::size_t block = 0; block < signs_.signs.size(); ++block) {
    if (signs_.signs[block] > 0) continue;
    double* p = x.data() + block * block_length_;
    for (std::size_t i = 0; i < block_length_; ++i) p[i] = -p[i];
  }
  fwht_inplace(x);
}

BrhtSpec sample_brht(PublicSeed& seed, std::size_t d, std::size_t block_length) {
  check_shape(d, block_length);
  return BrhtSpec(d, block_length, fourwise_rademacher(seed, d / block_length));
}

std::span<const double> brht_apply(const BrhtSpec& spec, std::span<const double> x,
                                   std::size_t keep, std::span<double> workspace) {
  if (keep < 1 || keep > spec.dimension()) {
    fail(Errc::kDimension, "brht_apply: keep=" + std::to_string(keep) +
                               " outside [1, " + std::to_string(spec.dimension()) + "]");
  }
  if (x.size() != spec.dimension() || workspace.size() != spec.dimension()) {
    fail(Errc::kDimension, "brht_apply: input length " + std::to_string(x.size()) +
                               " does not match d=" + std::to_string(spec.dimension()));
  }
  std::copy(x.begin(), x.end(), workspace.begin());
  spec.apply_inplace(workspace);
  return workspace.first(keep);
}

std::vector<double> brht_apply(const BrhtSpec& spec, std::span<const double> x,
                               std::size_t keep) {
  std::vector<double> work(spec.dimension());
  const auto head = brht_apply(spec, x, keep, work);
  return {head.begin(), head.end()};
}

CompressionProbeResult compression_probe(const BrhtSpec& spec, std::span<const double> mu,
                                         std::size_t t) {
  if (t < 1 || t > spec.block_count()) {
    fail(Errc::kDimension, "compression_probe: t=" + std::to_string(t) + " outside [1, " +
                               std::to_string(spec.block_count()) + "]");
  }
  const std::size_t kept = t * spec.block_length();
  const auto head = brht_apply(spec, mu, kept);
  CompressionProbeResult out;
  for (double v : head) out.z += v * v;
  double norm2 = 0.0;
  for (double v : mu) norm2 += v * v;
  out.threshold = static_cast<double>(kept) / (100.0 * static_cast<double>(spec.dimension())) * norm2;
  return out;
}

std::vector<double> pad_sample(std::span<const double> x, std::size_t padded_dimension,
                               Rng& rng) {
  if (padded_dimension < x.size()) {
    fail(Errc::kDimension, "pad_sample: target dimension smaller than input");
  }
  std::vector<double> out(padded_dimension);
  std::copy(x.begin(), x.end(), out.begin());
  boost::random::normal_distribution<double> normal;
  for (std::size_t i = x.size(); i < padded_dimension; ++i) out[i] = normal(rng);
  return out;
}

std::vector<double> pad_mean(std::span<const double> mu, std::size_t padded_dimension) {
  if (padded_dimension < mu.size()) {
    fail(Errc::kDimension, "pad_mean: target dimension smaller than input");
  }
  std::vector<double> out(padded_dimension, 0.0);
  std::copy(mu.begin(), mu.end(), out.begin());
  return out;
}

}  // namespace dgmt
