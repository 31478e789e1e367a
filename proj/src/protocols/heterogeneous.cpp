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
#include <string>

#include "dgmt/brht.hpp"
#include "dgmt/errors.hpp"
#include "dgmt/hadamard.hpp"
#include "dgmt/protocols.hpp"
#include "internal.hpp"

namespace dgmt {

ProtocolRun hetero_samples_protocol(std::span<const UserSamples> users, std::size_t d,
                                    std::size_t ell, double epsilon, PublicSeed& seed) {
  detail::check_dimension(d, "hetero_samples_protocol");
  detail::check_epsilon(epsilon, "hetero_samples_protocol");
  if (ell < kRepetitions) {
    fail(Errc::kParameter, "hetero_samples_protocol: ell=" + std::to_string(ell) +
                               " leaves no bits per repetition (need ell >= 7)");
  }
  detail::check_users(users, d, 0, "hetero_samples_protocol");
  const std::size_t n = users.size();
  std::vector<std::size_t> blocks(n);
  for (std::size_t k = 0; k < n; ++k) {
    blocks[k] = users[k].count / kRepetitions;
    if (blocks[k] == 0) {
      fail(Errc::kDegenerateInput, "hetero_samples_protocol: user " + std::to_string(k) +
                                       " holds " + std::to_string(users[k].count) +
                                       " < 7 samples");
    }
  }
  if (n < 2) fail(Errc::kInsufficientPopulation, "hetero_samples_protocol: need at least 2 users");

  const std::size_t consumed_before = seed.consumed();
  const std::size_t share = floor_power_of_two(std::min(ell / kRepetitions, d));
  const auto transforms = detail::sample_repetition_transforms(seed, d, share);

  ProtocolRun run;
  run.transcript.messages.resize(n);
  std::vector<double> aggregated(d);
  std::vector<double> workspace(d);
  for (std::size_t k = 0; k < n; ++k) {
    auto& msg = run.transcript.messages[k];
    msg.reserve(kRepetitions * share);
    for (std::size_t t = 0; t < kRepetitions; ++t) {
      aggregate_block_into(users[k], d, t + 1, blocks[k], aggregated);
      const auto head = brht_apply(transforms[t], aggregated, share, workspace);
      detail::append_wrapped_signs(msg, head, 0, share);
    }
  }

  // Referee: repetition t reads bits [t*share, (t+1)*share) of every message.
  const double tau = aggregated_referee_threshold(epsilon, kRepetitions * share, d, blocks);
  std::vector<Verdict> verdicts;
  verdicts.reserve(kRepetitions);
  BitSampleMatrix samples(n, share);
  for (std::size_t t = 0; t < kRepetitions; ++t) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto& msg = run.transcript.messages[k];
      std::copy_n(msg.begin() + static_cast<std::ptrdiff_t>(t * share), share,
                  samples.row(k).begin());
    }
    verdicts.push_back(bpmt_decide_threshold(samples, tau));
  }
  run.decision = detail::amplify(std::move(verdicts));
  detail::seal(run.transcript, seed, consumed_before);
  return run;
}

ProtocolRun hetero_comm_protocol(std::span<const UserSamples> users,
                                 std::span<const std::size_t> ells, std::size_t d,
                                 double epsilon, PublicSeed& seed) {
  detail::check_dimension(d, "hetero_comm_protocol");
  detail::check_epsilon(epsilon, "hetero_comm_protocol");
  detail::check_users(users, d, 1, "hetero_comm_protocol");
  if (ells.size() != users.size()) {
    fail(Errc::kParameter, "hetero_comm_protocol: one budget per user required");
  }
  for (std::size_t k = 0; k < ells.size(); ++k) {
    if (ells[k] < 1) {
      fail(Errc::kParameter, "hetero_comm_protocol: user " + std::to_string(k) + " has ell=0");
    }
  }

  const std::size_t consumed_before = seed.consumed();
  const std::size_t L = heterogeneous_block_length(d, seed.remaining(), ells);
  const auto transforms = detail::sample_repetition_transforms(seed, d, L);
  const double eps_inner = epsilon / std::sqrt(8.0) *
                           std::sqrt(static_cast<double>(L) / (100.0 * static_cast<double>(d)));

  const std::size_t n = users.size();
  std::vector<std::size_t> shares(n);
  std::size_t per_rep_total = 0;
  for (std::size_t k = 0; k < n; ++k) {
    shares[k] = std::min(ells[k] / kRepetitions, L);
    per_rep_total += shares[k];
  }
  if (per_rep_total / L < 2) {
    fail(Errc::kInsufficientPopulation,
         "hetero_comm_protocol: per-repetition budget " + std::to_string(per_rep_total) +
             " bits yields fewer than 2 samples of dimension " + std::to_string(L));
  }

  // Users hold a single sample, so repetitions whose transforms coincide
  // (always the case when b = 1) see the same rotated vector.
  std::vector<std::size_t> source(kRepetitions);
  for (std::size_t t = 0; t < kRepetitions; ++t) {
    source[t] = t;
    for (std::size_t u = 0; u < t; ++u) {
      if (transforms[u].signs() == transforms[t].signs()) {
        source[t] = u;
        break;
      }
    }
  }

  ProtocolRun run;
  run.transcript.messages.resize(n);
  std::vector<double> rotated(kRepetitions * d);
  for (std::size_t k = 0; k < n; ++k) {
    auto& msg = run.transcript.messages[k];
    msg.reserve(kRepetitions * shares[k]);
  }
  std::vector<std::size_t> starts(n);
  std::size_t stream = 0;
  for (std::size_t k = 0; k < n; ++k) {
    starts[k] = stream % L;
    stream += shares[k];
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (shares[k] == 0) continue;
    auto& msg = run.transcript.messages[k];
    for (std::size_t t = 0; t < kRepetitions; ++t) {
      const std::span<double> slot(rotated.data() + source[t] * d, d);
      if (source[t] == t) brht_apply(transforms[t], users[k].sample(0, d), L, slot);
      detail::append_wrapped_signs(msg, slot.first(L), starts[k], shares[k]);
    }
  }

  // Referee: repetition t uses bits [t*share_k, (t+1)*share_k) of message k,
  // laid out on the wrap-around stream exactly as assemble_wraparound does.
  std::vector<Verdict> verdicts;
  verdicts.reserve(kRepetitions);
  const std::size_t n_complete = per_rep_total / L;
  const std::size_t limit = n_complete * L;
  BitSampleMatrix samples(n_complete, L);
  for (std::size_t t = 0; t < kRepetitions; ++t) {
    std::size_t q = 0;
    for (std::size_t k = 0; k < n && q < limit; ++k) {
      const auto& msg = run.transcript.messages[k];
      for (std::size_t j = 0; j < shares[k] && q < limit; ++j, ++q) {
        samples.set(q / L, q % L, msg[t * shares[k] + j]);
      }
    }
    verdicts.push_back(bpmt_decide(samples, eps_inner));
  }
  run.decision = detail::amplify(std::move(verdicts));
  detail::seal(run.transcript, seed, consumed_before);
  return run;
}

}  // namespace dgmt
