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

// Command-line front end over the C API.
//
//   dgmt run --config cfg.json --trials 300 --seed 7 --out results.csv
//   dgmt calibrate --config cfg.json --target 0.1
//   dgmt sweep --config cfg.json --param epsilon --values 0.5,0.75,1
//
// Exit codes: 0 success, 1 other failure, 2 audit violation, 3 infeasible
// configuration.

#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dgmt/dgmt.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitAudit = 2;
constexpr int kExitInfeasible = 3;

struct ConfigDeleter {
  void operator()(dgmt_config* c) const { dgmt_config_free(c); }
};
struct ReportDeleter {
  void operator()(dgmt_report* r) const { dgmt_report_free(r); }
};
using ConfigPtr = std::unique_ptr<dgmt_config, ConfigDeleter>;
using ReportPtr = std::unique_ptr<dgmt_report, ReportDeleter>;

int exit_code(dgmt_status status) {
  switch (status) {
    case DGMT_OK:
      return kExitOk;
    case DGMT_ERR_AUDIT_VIOLATION:
      return kExitAudit;
    case DGMT_ERR_DIMENSION:
    case DGMT_ERR_BUDGET_EXHAUSTED:
    case DGMT_ERR_DEGENERATE_INPUT:
    case DGMT_ERR_PARAMETER:
    case DGMT_ERR_INSUFFICIENT_POPULATION:
    case DGMT_ERR_INFEASIBLE_PARTITION:
    case DGMT_ERR_CALIBRATION_FAILED:
      return kExitInfeasible;
    default:
      return kExitFailure;
  }
}

int report_failure(dgmt_status status) {
  std::cerr << "dgmt: " << dgmt_status_name(status) << ": " << dgmt_last_error() << "\n";
  return exit_code(status);
}

std::string take_string(char* s) {
  std::string out(s);
  dgmt_string_free(s);
  return out;
}

int load(const std::string& path, ConfigPtr& out) {
  dgmt_config* raw = nullptr;
  const dgmt_status st = dgmt_config_load(path.c_str(), &raw);
  if (st != DGMT_OK) return report_failure(st);
  out.reset(raw);
  return kExitOk;
}

struct RunArgs {
  std::string config;
  std::size_t trials = 300;
  std::uint64_t seed = 1;
  std::string out;
  bool no_timing = false;
  unsigned workers = 1;
};

int cmd_run(const RunArgs& args) {
  ConfigPtr config;
  if (int rc = load(args.config, config)) return rc;
  dgmt_run_options opts;
  dgmt_run_options_init(&opts);
  opts.trials = args.trials;
  opts.seed = args.seed;
  opts.record_timing = args.no_timing ? 0 : 1;
  opts.workers = args.workers;
  dgmt_report* raw = nullptr;
  dgmt_status st = dgmt_run(config.get(), &opts, &raw);
  if (st != DGMT_OK) return report_failure(st);
  ReportPtr report(raw);
  if (!args.out.empty()) {
    st = dgmt_report_write_csv(report.get(), args.out.c_str());
    if (st != DGMT_OK) return report_failure(st);
  }
  char* summary = nullptr;
  st = dgmt_report_summary_json(report.get(), &summary);
  if (st != DGMT_OK) return report_failure(st);
  std::cout << take_string(summary) << "\n";
  std::size_t violations = 0;
  dgmt_report_audit_violations(report.get(), &violations);
  if (violations > 0) {
    std::cerr << "dgmt: " << violations << " budget audit violation(s)\n";
    return kExitAudit;
  }
  return kExitOk;
}

struct CalibrateArgs {
  std::string config;
  double target = 0.1;
  std::size_t trials_per_mode = 100;
  std::uint64_t seed = 1;
  std::size_t start_multiplier = 1;
  std::size_t max_multiplier = std::size_t{1} << 20;
  unsigned workers = 1;
};

int cmd_calibrate(const CalibrateArgs& args) {
  ConfigPtr config;
  if (int rc = load(args.config, config)) return rc;
  dgmt_calibration_options opts;
  dgmt_calibration_options_init(&opts);
  opts.seed = args.seed;
  opts.trials_per_mode = args.trials_per_mode;
  opts.start_multiplier = args.start_multiplier;
  opts.max_multiplier = args.max_multiplier;
  opts.workers = args.workers;
  dgmt_calibration_result result;
  const dgmt_status st = dgmt_calibrate(config.get(), args.target, &opts, &result);
  if (st != DGMT_OK) return report_failure(st);
  std::printf(
      "{\n  \"multiplier\": %zu,\n  \"users\": %zu,\n  \"worst_rate\": %.6g,\n"
      "  \"theoretical_scaling\": %.6g,\n  \"achieved_constant\": %.6g,\n  \"steps\": %zu,\n"
      "  \"audit_violations\": %zu\n}\n",
      result.multiplier, result.users, result.worst_rate, result.theoretical_scaling,
      result.achieved_constant, result.steps, result.audit_violations);
  return result.audit_violations == 0 ? kExitOk : kExitAudit;
}

struct SweepArgs {
  std::string config;
  std::string param;
  std::vector<double> values;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

int cmd_sweep(const SweepArgs& args) {
  ConfigPtr base;
  if (int rc = load(args.config, base)) return rc;
  std::cout << args.param << ",users,type1_rate,worst_rate,audit_violations\n";
  int rc = kExitOk;
  for (double value : args.values) {
    dgmt_config* raw = nullptr;
    dgmt_status st = dgmt_config_clone(base.get(), &raw);
    if (st != DGMT_OK) return report_failure(st);
    ConfigPtr config(raw);
    st = dgmt_config_set(config.get(), args.param.c_str(), value);
    if (st != DGMT_OK) return report_failure(st);
    dgmt_run_options opts;
    dgmt_run_options_init(&opts);
    opts.trials = args.trials;
    opts.seed = args.seed;
    opts.record_timing = 0;
    opts.workers = args.workers;
    dgmt_report* rep_raw = nullptr;
    st = dgmt_run(config.get(), &opts, &rep_raw);
    if (st != DGMT_OK) return report_failure(st);
    ReportPtr report(rep_raw);
    std::size_t users = 0;
    std::size_t violations = 0;
    double type1 = 0.0;
    double worst = 0.0;
    dgmt_config_user_count(config.get(), &users);
    dgmt_report_audit_violations(report.get(), &violations);
    dgmt_report_worst_rate(report.get(), &worst);
    const bool has_null = dgmt_report_type1_rate(report.get(), &type1) == DGMT_OK;
    std::cout << value << ',' << users << ',';
    if (has_null) std::cout << type1;
    std::cout << ',' << worst << ',' << violations << "\n";
    if (violations > 0) rc = kExitAudit;
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed Gaussian mean testing simulator"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Estimate error rates for a config");
  run_cmd->add_option("--config", run.config, "Population config (JSON)")->required();
  run_cmd->add_option("--trials", run.trials, "Trials per mean mode")->check(CLI::PositiveNumber);
  run_cmd->add_option("--seed", run.seed, "Master seed");
  run_cmd->add_option("--out", run.out, "Per-trial CSV output path");
  run_cmd->add_flag("--no-timing", run.no_timing, "Write 0 for wall_micros (byte-stable CSV)");
  run_cmd->add_option("--workers", run.workers, "Worker threads")->check(CLI::PositiveNumber);

  CalibrateArgs cal;
  auto* cal_cmd = app.add_subcommand("calibrate", "Find a population size reaching a target error");
  cal_cmd->add_option("--config", cal.config, "Population config (JSON)")->required();
  cal_cmd->add_option("--target", cal.target, "Target worst-case error");
  cal_cmd->add_option("--trials-per-mode", cal.trials_per_mode, "Trials per mean mode and step")
      ->check(CLI::PositiveNumber);
  cal_cmd->add_option("--seed", cal.seed, "Master seed");
  cal_cmd->add_option("--start-multiplier", cal.start_multiplier, "First population multiplier")
      ->check(CLI::PositiveNumber);
  cal_cmd->add_option("--max-multiplier", cal.max_multiplier, "Largest population multiplier")
      ->check(CLI::PositiveNumber);
  cal_cmd->add_option("--workers", cal.workers, "Worker threads")->check(CLI::PositiveNumber);

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run a config across values of one parameter");
  sweep_cmd->add_option("--config", sweep.config, "Population config (JSON)")->required();
  sweep_cmd->add_option("--param", sweep.param, "d, epsilon, s, multiplier, ell or m")->required();
  sweep_cmd->add_option("--values", sweep.values, "Comma-separated values")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--trials", sweep.trials, "Trials per mean mode")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--seed", sweep.seed, "Master seed");
  sweep_cmd->add_option("--workers", sweep.workers, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  if (*run_cmd) return cmd_run(run);
  if (*cal_cmd) return cmd_calibrate(cal);
  return cmd_sweep(sweep);
}
