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

#include "dgmt/binary_mean_test.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>

#include "dgmt/errors.hpp"

namespace dgmt {

const char* verdict_name(Verdict v) { return v == Verdict::kAccept ? "accept" : "reject"; }

BitSampleMatrix::BitSampleMatrix(std::size_t n, std::size_t dim)
    : n_(n), dim_(dim), bits_(n * dim, 0) {}

BitSampleMatrix::BitSampleMatrix(std::size_t n, std::size_t dim, std::vector<std::uint8_t> bits)
    : n_(n), dim_(dim), bits_(std::move(bits)) {
  if (bits_.size() != n * dim) {
    fail(Errc::kDimension, "BitSampleMatrix: expected " + std::to_string(n * dim) +
                               " entries, got " + std::to_string(bits_.size()));
  }
  for (auto b : bits_) {
    if (b > 1) fail(Errc::kParameter, "BitSampleMatrix: entries must be 0 or 1");
  }
}

void BitSampleMatrix::set(std::size_t row, std::size_t col, std::uint8_t bit) {
  if (bit > 1) fail(Errc::kParameter, "BitSampleMatrix: entries must be 0 or 1");
  bits_[row * dim_ + col] = bit;
}

double collision_statistic(const BitSampleMatrix& samples) {
  const std::size_t n = samples.rows();
  if (n < 2) {
    fail(Errc::kDegenerateInput,
         "collision_statistic: need at least 2 samples, got " + std::to_string(n));
  }
  const std::size_t dim = samples.dim();
  std::vector<std::int64_t> ones(dim, 0);
  for (std::size_t k = 0; k < n; ++k) {
    const auto row = samples.row(k);
    for (std::size_t i = 0; i < dim; ++i) ones[i] += row[i];
  }
  // 4 (S_i^2 - n/4) = (2 c_i - n)^2 - n with c_i the count of ones.
  const auto nn = static_cast<std::int64_t>(n);
  std::int64_t total = 0;
  for (std::int64_t c : ones) {
    const std::int64_t twice_s = 2 * c - nn;
    total += twice_s * twice_s - nn;
  }
  return static_cast<double>(total) / (4.0 * static_cast<double>(n) * static_cast<double>(n - 1));
}

Verdict bpmt_decide(const BitSampleMatrix& samples, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    fail(Errc::kParameter, "bpmt_decide: epsilon must lie in (0, 1]");
  }
  return bpmt_decide_threshold(samples, epsilon * epsilon / 2.0);
}

Verdict bpmt_decide_threshold(const BitSampleMatrix& samples, double tau) {
  if (!(tau >= 0.0)) fail(Errc::kParameter, "bpmt_decide_threshold: tau must be >= 0");
  return collision_statistic(samples) > tau ? Verdict::kReject : Verdict::kAccept;
}

MomentReport bpmt_moments_oracle(std::span<const double> p, std::size_t n) {
  if (n < 2) fail(Errc::kParameter, "bpmt_moments_oracle: n must be >= 2");
  std::vector<std::vector<double>> rows(n, std::vector<double>(p.begin(), p.end()));
  return bpmt_moments_oracle(rows);
}

MomentReport bpmt_moments_oracle(const std::vector<std::vector<double>>& p_by_sample) {
  const std::size_t n = p_by_sample.size();
  if (n < 2) fail(Errc::kParameter, "bpmt_moments_oracle: n must be >= 2");
  const std::size_t dim = p_by_sample.front().size();
  double sum_pairs = 0.0;  // sum over coordinates of sum_{k1 != k2} pt_k1 pt_k2
  for (std::size_t i = 0; i < dim; ++i) {
    double s = 0.0;
    double s2 = 0.0;
    int sign = 0;
    for (const auto& row : p_by_sample) {
      if (row.size() != dim) fail(Errc::kDimension, "bpmt_moments_oracle: ragged input");
      const double pi = row[i];
      if (!(pi > 0.0 && pi < 1.0)) {
        fail(Errc::kParameter, "bpmt_moments_oracle: means must lie in (0, 1)");
      }
      const double centred = pi - 0.5;
      const int this_sign = centred > 0 ? 1 : (centred < 0 ? -1 : 0);
      if (this_sign != 0) {
        if (sign != 0 && sign != this_sign) {
          fail(Errc::kParameter, "bpmt_moments_oracle: coordinate " + std::to_string(i) +
                                     " has centred means of both signs");
        }
        sign = this_sign;
      }
      s += centred;
      s2 += centred * centred;
    }
    sum_pairs += s * s - s2;
  }
  const double nd = static_cast<double>(n);
  const double pairs = nd * (nd - 1.0);
  MomentReport out;
  out.mean_t = sum_pairs / pairs;
  // sum_i Var(T_i) <= dim * n(n-1)/8 + (n-2) * sum_i E[T_i]
  out.var_bound = (static_cast<double>(dim) * pairs / 8.0 + (nd - 2.0) * sum_pairs) / (pairs * pairs);
  return out;
}

}  // namespace dgmt
