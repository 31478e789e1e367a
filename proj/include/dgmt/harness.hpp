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

// Monte Carlo harness: population configs, Gaussian data, single trials,
// budget audits, error estimation and population calibration.

#ifndef DGMT_HARNESS_HPP_
#define DGMT_HARNESS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dgmt/protocols.hpp"
#include "dgmt/rng.hpp"

namespace dgmt {

enum class ProtocolKind { kPrivate, kLimited, kHeteroSamples, kHeteroComm, kMixAndMatch };

const char* protocol_name(ProtocolKind p);
ProtocolKind parse_protocol(const std::string& name);

enum class MeanMode { kNull, kSpike, kSpread, kRandomDirection };

const char* mean_mode_name(MeanMode m);
MeanMode parse_mean_mode(const std::string& name);

struct MeanSpec {
  MeanMode mode = MeanMode::kNull;
  double norm = 0.0;

  // norm = 0 for the null mode, epsilon otherwise.
  static MeanSpec for_mode(MeanMode mode, double epsilon);
};

// `users` is a template that is replicated `multiplier` times to form the
// population; an explicit partition is replicated the same way with shifted
// indices. Mix-and-match without a partition uses greedy_partition.
struct PopulationConfig {
  std::size_t d = 1;
  double epsilon = 1.0;
  std::size_t s = 0;
  ProtocolKind protocol = ProtocolKind::kPrivate;
  std::vector<UserSpec> users;
  std::optional<Partition> partition;
  std::vector<MeanMode> mean_modes = {MeanMode::kNull, MeanMode::kSpike, MeanMode::kSpread,
                                      MeanMode::kRandomDirection};
  std::size_t multiplier = 1;

  // Throws kParameter (or kDimension) when the config cannot run.
  void validate() const;

  // Smallest power of two >= d; protocols run in this dimension.
  std::size_t padded_dimension() const;

  std::size_t population_size() const { return users.size() * multiplier; }
  std::vector<UserSpec> expanded_users() const;
  std::optional<Partition> expanded_partition() const;
};

PopulationConfig parse_config(const std::string& json_text);
PopulationConfig load_config(const std::string& path);
std::string config_to_json(const PopulationConfig& config);

// `count` i.i.d. draws of G(mu, I), row-major.
std::vector<double> gen_gaussian_samples(std::span<const double> mu, std::size_t count, Rng& rng);

// Alternative-hypothesis mean of norm spec.norm (or zero). Only
// random_direction reads from `rng`.
std::vector<double> make_mean(const MeanSpec& spec, std::size_t d, Rng& rng);

// Pr[N(mu_i, 1) > 0].
double sign_flip_prob(double mu_i);

struct TrialResult {
  ProtocolRun run;
  std::uint64_t public_seed_key = 0;  // replays the public bits of this trial
  std::size_t users = 0;
};

// Fully deterministic in (config, mode, trial_index, master_seed). Stream
// keys: derive_key(master, {mode, trial, k}) for user k, and the reserved
// labels below for the mean and the public seed.
TrialResult run_trial(const PopulationConfig& config, MeanMode mode, std::size_t trial_index,
                      std::uint64_t master_seed);

inline constexpr std::uint64_t kMeanStreamLabel = 0xFFFF'FFFF'FFFF'0001ULL;
inline constexpr std::uint64_t kPublicStreamLabel = 0xFFFF'FFFF'FFFF'0002ULL;

struct AuditReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// ok iff bits_sent[k] <= ell_k for all users, bits_sent mirrors the
// messages, and public_bits_used <= s.
AuditReport budget_audit(const Transcript& transcript, const PopulationConfig& config);

struct TrialRecord {
  std::size_t trial = 0;
  MeanMode mode = MeanMode::kNull;
  Verdict verdict = Verdict::kAccept;
  std::size_t bits_total = 0;
  std::size_t public_bits_used = 0;
  std::int64_t wall_micros = 0;
  bool audit_ok = true;
};

struct ModeRate {
  MeanMode mode = MeanMode::kNull;
  double rate = 0.0;
  double ci_halfwidth = 0.0;
};

struct ErrorEstimate {
  std::size_t trials = 0;  // per mode
  std::optional<ModeRate> type1;    // reject rate under the null
  std::vector<ModeRate> type2;      // accept rate per alternative mode
  double worst_rate = 0.0;
  double ci_halfwidth = 0.0;        // of the worst rate

  static double halfwidth(double rate, std::size_t trials);
};

struct ErrorReport {
  ErrorEstimate estimate;
  std::vector<TrialRecord> records;  // sorted by (mode order, trial)
  std::vector<std::string> audit_violations;
};

struct RunOptions {
  std::uint64_t seed = 1;
  bool record_timing = true;
  unsigned workers = 1;
};

// Replaces run_trial, e.g. to stub a protocol in tests.
using TrialRunner =
    std::function<TrialResult(const PopulationConfig&, MeanMode, std::size_t, std::uint64_t)>;

ErrorReport estimate_error(const PopulationConfig& config, std::size_t trials,
                           std::span<const MeanMode> modes, const RunOptions& options,
                           const TrialRunner& runner = {});

// Recomputes an estimate from raw records; estimate_error's output always
// equals recount(records).
ErrorEstimate recount(std::span<const TrialRecord> records, std::span<const MeanMode> modes);

struct CalibrationOptions {
  std::size_t trials_per_mode = 100;
  std::uint64_t seed = 1;
  std::size_t start_multiplier = 1;
  std::size_t max_multiplier = std::size_t{1} << 20;
  unsigned workers = 1;
};

struct CalibrationStep {
  std::size_t multiplier = 0;
  std::size_t users = 0;
  double worst_rate = 0.0;
  bool null_only = false;  // alternatives skipped because the null already failed
  std::size_t audit_violations = 0;
};

struct CalibrationResult {
  std::size_t multiplier = 0;
  std::size_t users = 0;
  ErrorEstimate estimate;
  double theoretical_scaling = 0.0;
  double achieved_constant = 0.0;
  std::size_t audit_violations = 0;  // summed over every step
  std::vector<CalibrationStep> history;
};

// Theoretical population size for the config's protocol, up to the
// unspecified absolute constant.
double theoretical_scaling(const PopulationConfig& config);

// Measured population size relative to theoretical_scaling: n / scaling for
// private and limited, and the left-hand side of the sufficient condition
// over its right-hand side for the heterogeneous protocols.
double achieved_constant(const PopulationConfig& config);

// Doubles the multiplier from start_multiplier until the worst rate is at
// most target. The last candidate is clamped to max_multiplier; failing
// there throws kCalibrationFailed.
CalibrationResult calibrate(const PopulationConfig& config, double target,
                            const CalibrationOptions& options);

// CSV with header trial,mean_mode,verdict,bits_total,public_bits_used,wall_micros.
void write_csv(std::ostream& out, std::span<const TrialRecord> records);

std::string estimate_to_json(const ErrorEstimate& estimate);

}  // namespace dgmt

#endif  // DGMT_HARNESS_HPP_
