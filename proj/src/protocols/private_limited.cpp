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
namespace {

void check_ell(std::size_t ell, std::size_t d, const char* who) {
  if (ell < 1 || ell > d) {
    fail(Errc::kParameter, std::string(who) + ": ell=" + std::to_string(ell) +
                               " outside [1, d=" + std::to_string(d) + "]");
  }
}

// Simulate-and-infer referee over wrap-around messages of dimension L.
Verdict simulate_and_infer_referee(std::span<const BitVector> messages, std::size_t L,
                                   double epsilon, const char* who) {
  std::size_t total = 0;
  for (const auto& m : messages) total += m.size();
  if (total / L < 2) {
    fail(Errc::kInsufficientPopulation,
         std::string(who) + ": " + std::to_string(messages.size()) + " users with " +
             std::to_string(total) + " bits yield fewer than 2 simulated samples of dimension " +
             std::to_string(L));
  }
  return bpmt_decide(assemble_wraparound(messages, L), epsilon / std::sqrt(8.0));
}

}  // namespace

ProtocolRun private_coin_protocol(std::span<const UserSamples> users, std::size_t d,
                                  std::size_t ell, double epsilon) {
  detail::check_dimension(d, "private_coin_protocol");
  check_ell(ell, d, "private_coin_protocol");
  detail::check_epsilon(epsilon, "private_coin_protocol");
  detail::check_users(users, d, 1, "private_coin_protocol");

  const std::size_t share = floor_power_of_two(ell);
  ProtocolRun run;
  run.transcript.messages.resize(users.size());
  for (std::size_t k = 0; k < users.size(); ++k) {
    auto& msg = run.transcript.messages[k];
    msg.reserve(share);
    detail::append_wrapped_signs(msg, users[k].sample(0, d), k * share, share);
  }
  run.decision.verdict =
      simulate_and_infer_referee(run.transcript.messages, d, epsilon, "private_coin_protocol");
  run.transcript.bits_sent.resize(users.size(), share);
  run.transcript.public_bits_used = 0;
  return run;
}

ProtocolRun limited_coin_protocol(std::span<const UserSamples> users, std::size_t d,
                                  std::size_t ell, double epsilon, PublicSeed& seed) {
  detail::check_dimension(d, "limited_coin_protocol");
  check_ell(ell, d, "limited_coin_protocol");
  detail::check_epsilon(epsilon, "limited_coin_protocol");
  detail::check_users(users, d, 1, "limited_coin_protocol");

  const std::size_t consumed_before = seed.consumed();
  const std::size_t share = floor_power_of_two(ell);
  const std::size_t L = std::max(compressed_dimension(d, seed.remaining()), share);
  const auto transforms = detail::sample_repetition_transforms(seed, d, L);
  const double eps_eff = epsilon * std::sqrt(static_cast<double>(L) / (100.0 * static_cast<double>(d)));

  ProtocolRun run;
  run.transcript.messages.resize(users.size());
  std::vector<double> workspace(d);
  std::vector<Verdict> verdicts;
  verdicts.reserve(kRepetitions);

  // Cohort r holds users [start_r, start_r + size_r); the first n mod 7 cohorts
  // get one extra user.
  const std::size_t n = users.size();
  std::size_t start = 0;
  for (std::size_t r = 0; r < kRepetitions; ++r) {
    const std::size_t size = n / kRepetitions + (r < n % kRepetitions ? 1 : 0);
    for (std::size_t i = 0; i < size; ++i) {
      const std::size_t k = start + i;
      const auto head = brht_apply(transforms[r], users[k].sample(0, d), L, workspace);
      auto& msg = run.transcript.messages[k];
      msg.reserve(share);
      detail::append_wrapped_signs(msg, head, i * share, share);
    }
    const std::span<const BitVector> cohort(run.transcript.messages.data() + start, size);
    verdicts.push_back(simulate_and_infer_referee(cohort, L, eps_eff, "limited_coin_protocol"));
    start += size;
  }
  run.decision = detail::amplify(std::move(verdicts));
  detail::seal(run.transcript, seed, consumed_before);
  return run;
}

}  // namespace dgmt
