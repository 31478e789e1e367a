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

// One-shot distributed mean-testing protocols. Every protocol is split into
// per-user encoders, which only see their own samples plus the public
// transforms, and a referee, which only sees the transcript. A run returns
// both the decision and the transcript so the bit accounting can be audited.

#ifndef DGMT_PROTOCOLS_HPP_
#define DGMT_PROTOCOLS_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "dgmt/binary_mean_test.hpp"
#include "dgmt/shared_randomness.hpp"

namespace dgmt {

// Amplified protocols run this many independent repetitions and accept only
// if every repetition accepts.
inline constexpr std::size_t kRepetitions = 7;

// Each factor-2 compression of the working dimension costs 4 bits per
// repetition, i.e. 28 public bits across all repetitions.
inline constexpr std::size_t kSeedBitsPerHalving = 4 * kRepetitions;

struct UserSpec {
  std::size_t m = 1;    // samples held
  std::size_t ell = 1;  // bit budget
};

// `count` samples of a common dimension d, stored row-major.
struct UserSamples {
  std::span<const double> values;
  std::size_t count = 0;

  std::span<const double> sample(std::size_t j, std::size_t d) const {
    return values.subspan(j * d, d);
  }
};

struct Decision {
  Verdict verdict = Verdict::kAccept;
  std::vector<Verdict> repetition_verdicts;  // empty for single-shot protocols
};

struct Transcript {
  std::vector<BitVector> messages;
  std::vector<std::size_t> bits_sent;
  std::size_t public_bits_used = 0;

  std::size_t bits_total() const;
};

struct ProtocolRun {
  Decision decision;
  Transcript transcript;
};

struct Partition {
  std::vector<std::vector<std::size_t>> groups;
};

// bit i = 1 iff x_i > 0.
BitVector sign_quantize(std::span<const double> x);

// (1/sqrt(block)) times the sum of samples (t-1)*block .. t*block-1, i.e. the
// t-th of the disjoint aggregation windows (t is 1-based).
std::vector<double> aggregate_block(const UserSamples& samples, std::size_t d, std::size_t t,
                                    std::size_t block);
void aggregate_block_into(const UserSamples& samples, std::size_t d, std::size_t t,
                          std::size_t block, std::span<double> out);

// Reassembles L-dimensional binary samples from messages laid out on one
// global bit stream: stream position q holds coordinate q mod L of sample
// floor(q / L). Only complete samples are returned.
BitSampleMatrix assemble_wraparound(std::span<const BitVector> messages, std::size_t L);

// d / 2^min(floor(s/28), log2 d): the working dimension public bits can buy.
std::size_t compressed_dimension(std::size_t d, std::size_t s);

// N = sum_{k1 != k2} sqrt(B_k1 B_k2) over per-user aggregation windows.
double pairwise_sqrt_sum(std::span<const std::size_t> blocks);

// Referee threshold tau = eps'^2 / 2 with
// eps' = (eps / 80) * sqrt(ell * N / (7 d n (n-1))).
double aggregated_referee_threshold(double epsilon, std::size_t ell, std::size_t d,
                                    std::span<const std::size_t> blocks);

// Simulate-and-infer without shared randomness. Every user holds one
// d-dimensional sample (d a power of two) and sends floor_pow2(ell) sign
// bits; d/ell consecutive users cover one binary sample. Incomplete trailing
// groups are ignored by the referee.
ProtocolRun private_coin_protocol(std::span<const UserSamples> users, std::size_t d,
                                  std::size_t ell, double epsilon);

// Users are split into 7 cohorts. Cohort r rotates with its own (d, L)-BRHT,
// L = max(compressed_dimension(d, s), ell), keeps L coordinates and runs the
// private-coin protocol there at distance eps * sqrt(L / (100 d)).
ProtocolRun limited_coin_protocol(std::span<const UserSamples> users, std::size_t d,
                                  std::size_t ell, double epsilon, PublicSeed& seed);

// Heterogeneous sample counts. User k aggregates floor(m_k/7) samples per
// repetition, rotates with that repetition's BRHT, and sends floor_pow2(ell/7)
// sign bits per repetition.
ProtocolRun hetero_samples_protocol(std::span<const UserSamples> users, std::size_t d,
                                    std::size_t ell, double epsilon, PublicSeed& seed);

// Heterogeneous bit budgets, one sample per user. In every repetition user k
// sends floor(ell_k / 7) bits of its rotated, quantized L-dimensional vector
// under the wrap-around layout.
ProtocolRun hetero_comm_protocol(std::span<const UserSamples> users,
                                 std::span<const std::size_t> ells, std::size_t d,
                                 double epsilon, PublicSeed& seed);

// Working block length for hetero-comm and mix-and-match:
// max(compressed_dimension(d, s), ceil_pow2(max ell)), capped at d.
std::size_t heterogeneous_block_length(std::size_t d, std::size_t s,
                                       std::span<const std::size_t> ells);

// Groups of users pool their budgets to emit one L-dimensional binary sample
// per repetition; the referee treats the groups as users holding the group
// minimum sample count.
ProtocolRun mix_and_match_protocol(std::span<const UserSamples> users,
                                   std::span<const UserSpec> specs, const Partition& partition,
                                   std::size_t d, double epsilon, PublicSeed& seed);

// Throws kParameter unless the groups are nonempty, disjoint and cover [0, n).
void validate_partition(const Partition& partition, std::size_t n);

// Users sorted by descending m fill groups in order until each group's budget
// reaches 7L; a short tail is merged into the last group.
Partition greedy_partition(std::span<const UserSpec> specs, std::size_t L);

}  // namespace dgmt

#endif  // DGMT_PROTOCOLS_HPP_
