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
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <ostream>
#include <string>
#include <thread>

#include <json.hpp>

#include "dgmt/errors.hpp"
#include "dgmt/hadamard.hpp"
#include "dgmt/harness.hpp"

namespace dgmt {
namespace {

TrialRecord run_one(const PopulationConfig& config, MeanMode mode, std::size_t trial,
                    const RunOptions& options, const TrialRunner& runner,
                    std::vector<std::string>& violations) {
  const auto start = std::chrono::steady_clock::now();
  const TrialResult result = runner ? runner(config, mode, trial, options.seed)
                                    : run_trial(config, mode, trial, options.seed);
  const auto stop = std::chrono::steady_clock::now();
  TrialRecord rec;
  rec.trial = trial;
  rec.mode = mode;
  rec.verdict = result.run.decision.verdict;
  rec.bits_total = result.run.transcript.bits_total();
  rec.public_bits_used = result.run.transcript.public_bits_used;
  if (options.record_timing) {
    rec.wall_micros =
        std::chrono::duration_cast<std::chrono::microseconds>(stop - start).count();
  }
  const auto audit = budget_audit(result.run.transcript, config);
  rec.audit_ok = audit.ok;
  for (const auto& v : audit.violations) {
    violations.push_back(std::string(mean_mode_name(mode)) + " trial " + std::to_string(trial) +
                         ": " + v);
  }
  return rec;
}

std::vector<std::size_t> population_ells(const std::vector<UserSpec>& specs) {
  std::vector<std::size_t> ells(specs.size());
  for (std::size_t k = 0; k < specs.size(); ++k) ells[k] = specs[k].ell;
  return ells;
}

Partition effective_partition(const PopulationConfig& config, const std::vector<UserSpec>& specs) {
  if (auto p = config.expanded_partition()) return *p;
  const std::size_t L = heterogeneous_block_length(config.padded_dimension(), config.s,
                                                   population_ells(specs));
  return greedy_partition(specs, L);
}

}  // namespace

double ErrorEstimate::halfwidth(double rate, std::size_t trials) {
  if (trials == 0) return 0.0;
  return 1.96 * std::sqrt(rate * (1.0 - rate) / static_cast<double>(trials));
}

ErrorEstimate recount(std::span<const TrialRecord> records, std::span<const MeanMode> modes) {
  ErrorEstimate est;
  for (MeanMode mode : modes) {
    std::size_t total = 0;
    std::size_t errors = 0;
    for (const auto& r : records) {
      if (r.mode != mode) continue;
      ++total;
      const bool wrong = mode == MeanMode::kNull ? r.verdict == Verdict::kReject
                                                 : r.verdict == Verdict::kAccept;
      if (wrong) ++errors;
    }
    est.trials = std::max(est.trials, total);
    ModeRate mr;
    mr.mode = mode;
    mr.rate = total == 0 ? 0.0 : static_cast<double>(errors) / static_cast<double>(total);
    mr.ci_halfwidth = ErrorEstimate::halfwidth(mr.rate, total);
    if (mode == MeanMode::kNull) {
      est.type1 = mr;
    } else {
      est.type2.push_back(mr);
    }
    if (mr.rate >= est.worst_rate) {
      est.worst_rate = mr.rate;
      est.ci_halfwidth = mr.ci_halfwidth;
    }
  }
  return est;
}

ErrorReport estimate_error(const PopulationConfig& config, std::size_t trials,
                           std::span<const MeanMode> modes, const RunOptions& options,
                           const TrialRunner& runner) {
  config.validate();
  if (trials < 1) fail(Errc::kParameter, "estimate_error: trials must be >= 1");
  if (modes.empty()) fail(Errc::kParameter, "estimate_error: no mean modes");

  // The greedy partition depends only on the config; resolve it once.
  PopulationConfig resolved;
  const bool resolve = config.protocol == ProtocolKind::kMixAndMatch && !config.partition;
  if (resolve) {
    resolved = config;
    resolved.users = config.expanded_users();
    resolved.multiplier = 1;
    resolved.partition = effective_partition(config, resolved.users);
  }
  const PopulationConfig& effective = resolve ? resolved : config;

  const std::size_t jobs = modes.size() * trials;
  ErrorReport report;
  report.records.resize(jobs);
  std::vector<std::vector<std::string>> violations(jobs);
  std::vector<std::exception_ptr> errors(jobs);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t job = next++; job < jobs; job = next++) {
      try {
        report.records[job] = run_one(effective, modes[job / trials], job % trials, options,
                                      runner, violations[job]);
      } catch (...) {
        errors[job] = std::current_exception();
      }
    }
  };
  const unsigned workers = std::max(1u, options.workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  for (auto& v : violations) {
    report.audit_violations.insert(report.audit_violations.end(), v.begin(), v.end());
  }
  report.estimate = recount(report.records, modes);
  return report;
}

double theoretical_scaling(const PopulationConfig& config) {
  const double d = static_cast<double>(config.padded_dimension());
  const double eps2 = config.epsilon * config.epsilon;
  const auto specs = config.expanded_users();
  switch (config.protocol) {
    case ProtocolKind::kPrivate: {
      const double ell = static_cast<double>(floor_power_of_two(specs.front().ell));
      return std::pow(d, 1.5) / (ell * eps2);
    }
    case ProtocolKind::kLimited: {
      const std::size_t share = floor_power_of_two(specs.front().ell);
      const double L = static_cast<double>(
          std::max(compressed_dimension(config.padded_dimension(), config.s), share));
      return d * std::sqrt(L) / (static_cast<double>(share) * eps2);
    }
    case ProtocolKind::kHeteroSamples:
      return d / (std::sqrt(static_cast<double>(specs.front().ell)) * eps2);
    case ProtocolKind::kHeteroComm:
      return d / eps2;
    case ProtocolKind::kMixAndMatch: {
      const double L = static_cast<double>(
          heterogeneous_block_length(config.padded_dimension(), config.s, population_ells(specs)));
      return d / (eps2 * std::sqrt(L));
    }
  }
  return 0.0;
}

double achieved_constant(const PopulationConfig& config) {
  const double scaling = theoretical_scaling(config);
  const auto specs = config.expanded_users();
  const double n = static_cast<double>(specs.size());
  switch (config.protocol) {
    case ProtocolKind::kPrivate:
    case ProtocolKind::kLimited:
      return n / scaling;
    case ProtocolKind::kHeteroSamples: {
      std::vector<std::size_t> m(specs.size());
      for (std::size_t k = 0; k < specs.size(); ++k) m[k] = specs[k].m;
      return pairwise_sqrt_sum(m) / n / scaling;
    }
    case ProtocolKind::kHeteroComm: {
      double l1 = 0.0;
      double linf = 0.0;
      for (const auto& u : specs) {
        l1 += static_cast<double>(u.ell);
        linf = std::max(linf, static_cast<double>(u.ell));
      }
      return l1 / std::sqrt(linf) / scaling;
    }
    case ProtocolKind::kMixAndMatch: {
      const Partition p = effective_partition(config, specs);
      std::vector<std::size_t> mins;
      for (const auto& g : p.groups) {
        std::size_t lo = specs[g.front()].m;
        for (std::size_t i : g) lo = std::min(lo, specs[i].m);
        mins.push_back(lo);
      }
      return pairwise_sqrt_sum(mins) / static_cast<double>(mins.size()) / scaling;
    }
  }
  return 0.0;
}

CalibrationResult calibrate(const PopulationConfig& config, double target,
                            const CalibrationOptions& options) {
  if (!(target > 0.0 && target < 0.5)) {
    fail(Errc::kParameter, "calibrate: target error must lie in (0, 0.5)");
  }
  if (options.trials_per_mode < 1) fail(Errc::kParameter, "calibrate: trials_per_mode must be >= 1");
  if (options.start_multiplier < 1 || options.start_multiplier > options.max_multiplier) {
    fail(Errc::kParameter, "calibrate: need 1 <= start_multiplier <= max_multiplier");
  }
  config.validate();

  std::vector<MeanMode> nulls;
  std::vector<MeanMode> alternatives;
  for (MeanMode m : config.mean_modes) (m == MeanMode::kNull ? nulls : alternatives).push_back(m);

  CalibrationResult result;
  PopulationConfig trial_config = config;
  std::size_t mult = options.start_multiplier;
  while (true) {
    trial_config.multiplier = mult;
    RunOptions run;
    run.seed = derive_key(options.seed, {mult});
    run.record_timing = false;
    run.workers = options.workers;
    CalibrationStep step;
    step.multiplier = mult;
    step.users = trial_config.population_size();
    bool passed = false;
    try {
      std::vector<TrialRecord> records;
      if (!nulls.empty()) {
        auto rep = estimate_error(trial_config, options.trials_per_mode, nulls, run);
        records = std::move(rep.records);
        step.audit_violations += rep.audit_violations.size();
      }
      const auto null_est = recount(records, nulls);
      if (null_est.worst_rate > target) {
        step.null_only = true;
        step.worst_rate = null_est.worst_rate;
      } else {
        if (!alternatives.empty()) {
          auto rep = estimate_error(trial_config, options.trials_per_mode, alternatives, run);
          records.insert(records.end(), rep.records.begin(), rep.records.end());
          step.audit_violations += rep.audit_violations.size();
        }
        result.estimate = recount(records, config.mean_modes);
        step.worst_rate = result.estimate.worst_rate;
        passed = step.worst_rate <= target;
      }
    } catch (const Error& e) {
      if (e.code() != Errc::kInsufficientPopulation) throw;
      step.worst_rate = 1.0;
    }
    result.audit_violations += step.audit_violations;
    result.history.push_back(step);
    if (passed) break;
    if (mult == options.max_multiplier) {
      fail(Errc::kCalibrationFailed,
           "calibrate: worst error " + std::to_string(step.worst_rate) + " > target " +
               std::to_string(target) + " at the cap of " + std::to_string(step.users) + " users");
    }
    mult = std::min(mult * 2, options.max_multiplier);
  }
  result.multiplier = mult;
  result.users = trial_config.population_size();
  result.theoretical_scaling = theoretical_scaling(trial_config);
  result.achieved_constant = achieved_constant(trial_config);
  return result;
}

void write_csv(std::ostream& out, std::span<const TrialRecord> records) {
  out << "trial,mean_mode,verdict,bits_total,public_bits_used,wall_micros\n";
  for (const auto& r : records) {
    out << r.trial << ',' << mean_mode_name(r.mode) << ',' << verdict_name(r.verdict) << ','
        << r.bits_total << ',' << r.public_bits_used << ',' << r.wall_micros << '\n';
  }
}

std::string estimate_to_json(const ErrorEstimate& estimate) {
  using nlohmann::json;
  json j;
  j["trials"] = estimate.trials;
  if (estimate.type1) {
    j["type1_rate"] = estimate.type1->rate;
    j["type1_ci_halfwidth"] = estimate.type1->ci_halfwidth;
  } else {
    j["type1_rate"] = nullptr;
  }
  j["type2_rates"] = json::object();
  for (const auto& m : estimate.type2) {
    j["type2_rates"][mean_mode_name(m.mode)] = {{"rate", m.rate}, {"ci_halfwidth", m.ci_halfwidth}};
  }
  j["worst_rate"] = estimate.worst_rate;
  j["ci_halfwidth"] = estimate.ci_halfwidth;
  return j.dump(2);
}

}  // namespace dgmt
