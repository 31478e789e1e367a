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

#include "dgmt/harness.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/random/normal_distribution.hpp>

#include "dgmt/brht.hpp"
#include "dgmt/errors.hpp"

namespace dgmt {
namespace {

void fill_gaussian(std::span<const double> mu, std::size_t count, Rng& rng, double* out) {
  boost::random::normal_distribution<double> normal;
  const std::size_t d = mu.size();
  for (std::size_t j = 0; j < count; ++j) {
    for (std::size_t i = 0; i < d; ++i) *out++ = mu[i] + normal(rng);
  }
}

}  // namespace

std::vector<double> gen_gaussian_samples(std::span<const double> mu, std::size_t count, Rng& rng) {
  if (count < 1) fail(Errc::kParameter, "gen_gaussian_samples: count must be >= 1");
  std::vector<double> out(count * mu.size());
  fill_gaussian(mu, count, rng, out.data());
  return out;
}

std::vector<double> make_mean(const MeanSpec& spec, std::size_t d, Rng& rng) {
  if (d < 1) fail(Errc::kDimension, "make_mean: d must be >= 1");
  std::vector<double> mu(d, 0.0);
  switch (spec.mode) {
    case MeanMode::kNull:
      break;
    case MeanMode::kSpike:
      mu[0] = spec.norm;
      break;
    case MeanMode::kSpread:
      std::fill(mu.begin(), mu.end(), spec.norm / std::sqrt(static_cast<double>(d)));
      break;
    case MeanMode::kRandomDirection: {
      boost::random::normal_distribution<double> normal;
      double norm2 = 0.0;
      while (norm2 == 0.0) {
        for (double& v : mu) {
          v = normal(rng);
          norm2 += v * v;
        }
      }
      const double scale = spec.norm / std::sqrt(norm2);
      for (double& v : mu) v *= scale;
      break;
    }
  }
  return mu;
}

double sign_flip_prob(double mu_i) { return 0.5 * std::erfc(-mu_i / std::sqrt(2.0)); }

TrialResult run_trial(const PopulationConfig& config, MeanMode mode, std::size_t trial_index,
                      std::uint64_t master_seed) {
  config.validate();
  const std::size_t d = config.padded_dimension();
  const auto specs = config.expanded_users();
  const std::size_t n = specs.size();
  const auto mode_label = static_cast<std::uint64_t>(mode);

  Rng mean_rng(derive_key(master_seed, {mode_label, trial_index, kMeanStreamLabel}));
  const auto mu = pad_mean(make_mean(MeanSpec::for_mode(mode, config.epsilon), config.d, mean_rng), d);

  // Populations reach tens of megabytes; keeping the buffer per thread avoids
  // faulting fresh pages in on every trial.
  thread_local std::vector<double> storage;
  std::vector<std::size_t> offsets(n + 1, 0);
  for (std::size_t k = 0; k < n; ++k) offsets[k + 1] = offsets[k] + specs[k].m * d;
  if (storage.size() < offsets[n]) storage.resize(offsets[n]);
  std::vector<UserSamples> users(n);
  Rng rng;
  for (std::size_t k = 0; k < n; ++k) {
    rng.reseed(derive_key(master_seed, {mode_label, trial_index, k}));
    fill_gaussian(mu, specs[k].m, rng, storage.data() + offsets[k]);
    users[k] = {std::span<const double>(storage.data() + offsets[k], specs[k].m * d), specs[k].m};
  }

  TrialResult out;
  out.users = n;
  out.public_seed_key = derive_key(master_seed, {mode_label, trial_index, kPublicStreamLabel});
  PublicSeed seed = PublicSeed::from_key(out.public_seed_key, config.s);
  const std::size_t ell = specs.front().ell;
  switch (config.protocol) {
    case ProtocolKind::kPrivate:
      out.run = private_coin_protocol(users, d, ell, config.epsilon);
      break;
    case ProtocolKind::kLimited:
      out.run = limited_coin_protocol(users, d, ell, config.epsilon, seed);
      break;
    case ProtocolKind::kHeteroSamples:
      out.run = hetero_samples_protocol(users, d, ell, config.epsilon, seed);
      break;
    case ProtocolKind::kHeteroComm: {
      std::vector<std::size_t> ells(n);
      for (std::size_t k = 0; k < n; ++k) ells[k] = specs[k].ell;
      out.run = hetero_comm_protocol(users, ells, d, config.epsilon, seed);
      break;
    }
    case ProtocolKind::kMixAndMatch: {
      auto partition = config.expanded_partition();
      if (!partition) {
        std::vector<std::size_t> ells(n);
        for (std::size_t k = 0; k < n; ++k) ells[k] = specs[k].ell;
        partition = greedy_partition(specs, heterogeneous_block_length(d, config.s, ells));
      }
      out.run = mix_and_match_protocol(users, specs, *partition, d, config.epsilon, seed);
      break;
    }
  }
  return out;
}

AuditReport budget_audit(const Transcript& transcript, const PopulationConfig& config) {
  AuditReport report;
  auto flag = [&](std::string what) {
    report.ok = false;
    report.violations.push_back(std::move(what));
  };
  const auto specs = config.expanded_users();
  if (transcript.bits_sent.size() != specs.size()) {
    flag("transcript covers " + std::to_string(transcript.bits_sent.size()) + " users, config has " +
         std::to_string(specs.size()));
  }
  const std::size_t n = std::min(transcript.bits_sent.size(), specs.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (transcript.bits_sent[k] > specs[k].ell) {
      flag("user " + std::to_string(k) + " sent " + std::to_string(transcript.bits_sent[k]) +
           " bits, budget " + std::to_string(specs[k].ell));
    }
    if (k < transcript.messages.size() && transcript.messages[k].size() != transcript.bits_sent[k]) {
      flag("user " + std::to_string(k) + " message length " +
           std::to_string(transcript.messages[k].size()) + " disagrees with bits_sent " +
           std::to_string(transcript.bits_sent[k]));
    }
  }
  if (transcript.public_bits_used > config.s) {
    flag("public seed: used " + std::to_string(transcript.public_bits_used) + " bits, budget s=" +
         std::to_string(config.s));
  }
  return report;
}

}  // namespace dgmt
