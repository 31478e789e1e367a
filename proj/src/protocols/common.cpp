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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dgmt/errors.hpp"
#include "dgmt/hadamard.hpp"
#include "dgmt/protocols.hpp"
#include "internal.hpp"

namespace dgmt {
namespace detail {

void check_epsilon(double epsilon, const char* who) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) {
    fail(Errc::kParameter, std::string(who) + ": epsilon must lie in (0, 1]");
  }
}

void check_dimension(std::size_t d, const char* who) {
  if (!is_power_of_two(d)) {
    fail(Errc::kDimension, std::string(who) + ": dimension " + std::to_string(d) +
                               " is not a power of two; zero-pad first");
  }
}

void check_users(std::span<const UserSamples> users, std::size_t d, std::size_t required,
                 const char* who) {
  for (std::size_t k = 0; k < users.size(); ++k) {
    const auto& u = users[k];
    if (required > 0 && u.count != required) {
      fail(Errc::kParameter, std::string(who) + ": user " + std::to_string(k) + " holds " +
                                 std::to_string(u.count) + " samples, expected " +
                                 std::to_string(required));
    }
    if (u.count == 0) {
      fail(Errc::kDegenerateInput, std::string(who) + ": user " + std::to_string(k) +
                                       " holds no samples");
    }
    if (u.values.size() != u.count * d) {
      fail(Errc::kDimension, std::string(who) + ": user " + std::to_string(k) +
                                 " sample buffer does not match count * d");
    }
  }
}

std::vector<BrhtSpec> sample_repetition_transforms(PublicSeed& seed, std::size_t d,
                                                   std::size_t block_length) {
  std::vector<BrhtSpec> out;
  out.reserve(kRepetitions);
  for (std::size_t r = 0; r < kRepetitions; ++r) out.push_back(sample_brht(seed, d, block_length));
  return out;
}

void seal(Transcript& transcript, const PublicSeed& seed, std::size_t consumed_before) {
  transcript.bits_sent.resize(transcript.messages.size());
  for (std::size_t k = 0; k < transcript.messages.size(); ++k) {
    transcript.bits_sent[k] = transcript.messages[k].size();
  }
  transcript.public_bits_used = seed.consumed() - consumed_before;
}

Decision amplify(std::vector<Verdict> repetition_verdicts) {
  Decision d;
  d.verdict = std::all_of(repetition_verdicts.begin(), repetition_verdicts.end(),
                          [](Verdict v) { return v == Verdict::kAccept; })
                  ? Verdict::kAccept
                  : Verdict::kReject;
  d.repetition_verdicts = std::move(repetition_verdicts);
  return d;
}

}  // namespace detail

std::size_t Transcript::bits_total() const {
  return std::accumulate(bits_sent.begin(), bits_sent.end(), std::size_t{0});
}

BitVector sign_quantize(std::span<const double> x) {
  BitVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] > 0.0 ? 1 : 0;
  return out;
}

void aggregate_block_into(const UserSamples& samples, std::size_t d, std::size_t t,
                          std::size_t block, std::span<double> out) {
  if (block == 0) fail(Errc::kDegenerateInput, "aggregate_block: window size is 0");
  if (t < 1 || t > kRepetitions) {
    fail(Errc::kParameter, "aggregate_block: repetition index must lie in [1, 7]");
  }
  if (t * block > samples.count) {
    fail(Errc::kDegenerateInput, "aggregate_block: window " + std::to_string(t) +
                                     " needs " + std::to_string(t * block) + " samples, have " +
                                     std::to_string(samples.count));
  }
  if (out.size() != d || samples.values.size() < samples.count * d) {
    fail(Errc::kDimension, "aggregate_block: dimension mismatch");
  }
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t j = (t - 1) * block; j < t * block; ++j) {
    const auto x = samples.sample(j, d);
    for (std::size_t i = 0; i < d; ++i) out[i] += x[i];
  }
  if (block > 1) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(block));
    for (double& v : out) v *= scale;
  }
}

std::vector<double> aggregate_block(const UserSamples& samples, std::size_t d, std::size_t t,
                                    std::size_t block) {
  std::vector<double> out(d);
  aggregate_block_into(samples, d, t, block, out);
  return out;
}

BitSampleMatrix assemble_wraparound(std::span<const BitVector> messages, std::size_t L) {
  if (L == 0) fail(Errc::kParameter, "assemble_wraparound: L must be >= 1");
  std::size_t total = 0;
  for (std::size_t k = 0; k < messages.size(); ++k) {
    if (messages[k].size() > L) {
      fail(Errc::kParameter, "assemble_wraparound: user " + std::to_string(k) + " sent " +
                                 std::to_string(messages[k].size()) + " bits, more than L=" +
                                 std::to_string(L));
    }
    total += messages[k].size();
  }
  const std::size_t n_complete = total / L;
  if (n_complete == 0) {
    fail(Errc::kInsufficientPopulation, "assemble_wraparound: " + std::to_string(total) +
                                            " bits cannot fill one sample of " +
                                            std::to_string(L) + " coordinates");
  }
  BitSampleMatrix out(n_complete, L);
  const std::size_t limit = n_complete * L;
  std::size_t q = 0;
  for (const auto& msg : messages) {
    for (std::uint8_t bit : msg) {
      if (q >= limit) return out;
      out.set(q / L, q % L, bit);
      ++q;
    }
  }
  return out;
}

std::size_t compressed_dimension(std::size_t d, std::size_t s) {
  detail::check_dimension(d, "compressed_dimension");
  const std::size_t halvings = std::min(s / kSeedBitsPerHalving, log2_exact(d));
  return d >> halvings;
}

double pairwise_sqrt_sum(std::span<const std::size_t> blocks) {
  double sum_sqrt = 0.0;
  double sum = 0.0;
  for (std::size_t b : blocks) {
    sum_sqrt += std::sqrt(static_cast<double>(b));
    sum += static_cast<double>(b);
  }
  return sum_sqrt * sum_sqrt - sum;
}

double aggregated_referee_threshold(double epsilon, std::size_t ell, std::size_t d,
                                    std::span<const std::size_t> blocks) {
  const double n = static_cast<double>(blocks.size());
  if (blocks.size() < 2) {
    fail(Errc::kInsufficientPopulation, "referee threshold: need at least 2 users");
  }
  const double N = pairwise_sqrt_sum(blocks);
  const double eps_prime = epsilon / 80.0 *
                           std::sqrt(static_cast<double>(ell) * N /
                                     (7.0 * static_cast<double>(d) * n * (n - 1.0)));
  return eps_prime * eps_prime / 2.0;
}

std::size_t heterogeneous_block_length(std::size_t d, std::size_t s,
                                       std::span<const std::size_t> ells) {
  const std::size_t d_s = compressed_dimension(d, s);
  std::size_t max_ell = 1;
  for (std::size_t e : ells) max_ell = std::max(max_ell, e);
  return std::max(d_s, std::min(d, ceil_power_of_two(max_ell)));
}

void validate_partition(const Partition& partition, std::size_t n) {
  std::vector<char> seen(n, 0);
  std::size_t covered = 0;
  for (std::size_t g = 0; g < partition.groups.size(); ++g) {
    const auto& group = partition.groups[g];
    if (group.empty()) fail(Errc::kParameter, "partition: group " + std::to_string(g) + " is empty");
    for (std::size_t i : group) {
      if (i >= n) {
        fail(Errc::kParameter, "partition: user index " + std::to_string(i) + " out of range");
      }
      if (seen[i]) {
        fail(Errc::kParameter, "partition: user " + std::to_string(i) + " appears twice");
      }
      seen[i] = 1;
      ++covered;
    }
  }
  if (covered != n) {
    fail(Errc::kParameter, "partition: covers " + std::to_string(covered) + " of " +
                               std::to_string(n) + " users");
  }
}

Partition greedy_partition(std::span<const UserSpec> specs, std::size_t L) {
  const std::size_t need = kRepetitions * L;
  std::size_t total = 0;
  for (const auto& u : specs) total += u.ell;
  if (L == 0 || total < need) {
    fail(Errc::kInfeasiblePartition, "greedy_partition: total budget " + std::to_string(total) +
                                         " below 7L = " + std::to_string(need));
  }
  std::vector<std::size_t> order(specs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return specs[a].m > specs[b].m; });

  Partition out;
  std::vector<std::size_t> current;
  std::size_t budget = 0;
  for (std::size_t i : order) {
    current.push_back(i);
    budget += specs[i].ell;
    if (budget >= need) {
      out.groups.push_back(std::move(current));
      current.clear();
      budget = 0;
    }
  }
  if (!current.empty()) {
    auto& last = out.groups.back();
    last.insert(last.end(), current.begin(), current.end());
  }
  return out;
}

}  // namespace dgmt
