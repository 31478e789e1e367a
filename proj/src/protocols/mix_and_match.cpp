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
#include <string>

#include "dgmt/brht.hpp"
#include "dgmt/errors.hpp"
#include "dgmt/protocols.hpp"
#include "internal.hpp"

namespace dgmt {

ProtocolRun mix_and_match_protocol(std::span<const UserSamples> users,
                                   std::span<const UserSpec> specs, const Partition& partition,
                                   std::size_t d, double epsilon, PublicSeed& seed) {
  detail::check_dimension(d, "mix_and_match_protocol");
  detail::check_epsilon(epsilon, "mix_and_match_protocol");
  if (specs.size() != users.size()) {
    fail(Errc::kParameter, "mix_and_match_protocol: one UserSpec per user required");
  }
  detail::check_users(users, d, 0, "mix_and_match_protocol");
  const std::size_t n = users.size();
  std::vector<std::size_t> ells(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (specs[i].ell < 1 || specs[i].m != users[i].count) {
      fail(Errc::kParameter, "mix_and_match_protocol: user " + std::to_string(i) +
                                 " spec does not match its samples");
    }
    ells[i] = specs[i].ell;
  }
  validate_partition(partition, n);

  const std::size_t L = heterogeneous_block_length(d, seed.remaining(), ells);
  const std::size_t stream_length = kRepetitions * L;
  const std::size_t K = partition.groups.size();
  std::vector<std::size_t> blocks(K);
  for (std::size_t j = 0; j < K; ++j) {
    std::size_t budget = 0;
    std::size_t min_m = specs[partition.groups[j].front()].m;
    for (std::size_t i : partition.groups[j]) {
      budget += specs[i].ell;
      min_m = std::min(min_m, specs[i].m);
    }
    if (budget < stream_length) {
      fail(Errc::kInfeasiblePartition, "mix_and_match_protocol: group " + std::to_string(j) +
                                           " budget " + std::to_string(budget) +
                                           " below 7L = " + std::to_string(stream_length));
    }
    blocks[j] = min_m / kRepetitions;
    if (blocks[j] == 0) {
      fail(Errc::kDegenerateInput, "mix_and_match_protocol: group " + std::to_string(j) +
                                       " minimum sample count " + std::to_string(min_m) +
                                       " < 7");
    }
  }
  if (K < 2) fail(Errc::kInsufficientPopulation, "mix_and_match_protocol: need at least 2 groups");

  const std::size_t consumed_before = seed.consumed();
  const auto transforms = detail::sample_repetition_transforms(seed, d, L);

  // Group j fills one stream of 7L positions; position q is coordinate q mod L
  // of repetition floor(q / L). Members take consecutive runs of the stream.
  ProtocolRun run;
  run.transcript.messages.resize(n);
  std::vector<double> aggregated(d);
  std::vector<double> workspace(d);
  for (std::size_t j = 0; j < K; ++j) {
    std::size_t q = 0;
    for (std::size_t i : partition.groups[j]) {
      const std::size_t take = std::min(specs[i].ell, stream_length - q);
      auto& msg = run.transcript.messages[i];
      msg.reserve(take);
      const std::size_t end = q + take;
      while (q < end) {
        const std::size_t t = q / L;
        const std::size_t run_end = std::min(end, (t + 1) * L);
        aggregate_block_into(users[i], d, t + 1, blocks[j], aggregated);
        const auto head = brht_apply(transforms[t], aggregated, L, workspace);
        detail::append_wrapped_signs(msg, head, q % L, run_end - q);
        q = run_end;
      }
    }
  }

  // Referee: concatenating a group's messages in member order recovers its
  // stream; the groups then act as K users with windows blocks[j].
  const double tau = aggregated_referee_threshold(epsilon, stream_length, d, blocks);
  std::vector<BitSampleMatrix> per_rep(kRepetitions, BitSampleMatrix(K, L));
  for (std::size_t j = 0; j < K; ++j) {
    std::size_t q = 0;
    for (std::size_t i : partition.groups[j]) {
      for (std::uint8_t bit : run.transcript.messages[i]) {
        per_rep[q / L].set(j, q % L, bit);
        ++q;
      }
    }
  }
  std::vector<Verdict> verdicts;
  verdicts.reserve(kRepetitions);
  for (const auto& samples : per_rep) verdicts.push_back(bpmt_decide_threshold(samples, tau));
  run.decision = detail::amplify(std::move(verdicts));
  detail::seal(run.transcript, seed, consumed_before);
  return run;
}

}  // namespace dgmt
