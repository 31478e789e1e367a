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

#include "dgmt/dgmt.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <fstream>
#include <new>
#include <string>

#include <json.hpp>

#include "dgmt/binary_mean_test.hpp"
#include "dgmt/errors.hpp"
#include "dgmt/hadamard.hpp"
#include "dgmt/harness.hpp"
#include "dgmt/transcript.hpp"

struct dgmt_config {
  dgmt::PopulationConfig config;
};

struct dgmt_report {
  dgmt::PopulationConfig config;
  dgmt::ErrorReport report;
};

namespace {

thread_local std::string last_error;

dgmt_status set_error(dgmt_status status, const std::string& what) {
  last_error = what;
  return status;
}

// Runs body, translating exceptions into status codes.
template <typename F>
dgmt_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return DGMT_OK;
  } catch (const dgmt::Error& e) {
    return set_error(static_cast<dgmt_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(DGMT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(DGMT_ERR_INTERNAL, e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::size_t to_count(double value, const char* name) {
  if (!(value >= 0.0) || value != std::floor(value) || value > 9.0e15) {
    dgmt::fail(dgmt::Errc::kParameter, std::string(name) + " must be a nonnegative integer");
  }
  return static_cast<std::size_t>(value);
}

#define DGMT_REQUIRE(ptr)                                                         \
  do {                                                                            \
    if ((ptr) == nullptr) {                                                       \
      return set_error(DGMT_ERR_INVALID_ARGUMENT, #ptr " must not be null");      \
    }                                                                             \
  } while (0)

}  // namespace

extern "C" {

const char* dgmt_status_name(dgmt_status status) {
  switch (status) {
    case DGMT_OK:
      return "ok";
    case DGMT_ERR_INVALID_ARGUMENT:
      return "invalid-argument";
    case DGMT_ERR_INTERNAL:
      return "internal";
    default:
      break;
  }
  if (status >= DGMT_ERR_DIMENSION && status <= DGMT_ERR_IO) {
    return dgmt::errc_name(static_cast<dgmt::Errc>(status));
  }
  return "unknown";
}

const char* dgmt_last_error(void) { return last_error.c_str(); }

const char* dgmt_version(void) { return "0.1.0"; }

dgmt_status dgmt_config_parse(const char* json_text, dgmt_config** out) {
  DGMT_REQUIRE(json_text);
  DGMT_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new dgmt_config{dgmt::parse_config(json_text)}; });
}

dgmt_status dgmt_config_load(const char* path, dgmt_config** out) {
  DGMT_REQUIRE(path);
  DGMT_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new dgmt_config{dgmt::load_config(path)}; });
}

dgmt_status dgmt_config_clone(const dgmt_config* config, dgmt_config** out) {
  DGMT_REQUIRE(config);
  DGMT_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new dgmt_config{config->config}; });
}

void dgmt_config_free(dgmt_config* config) { delete config; }

dgmt_status dgmt_config_set(dgmt_config* config, const char* name, double value) {
  DGMT_REQUIRE(config);
  DGMT_REQUIRE(name);
  return guarded([&] {
    dgmt::PopulationConfig c = config->config;
    const std::string key = name;
    if (key == "d") {
      c.d = to_count(value, "d");
    } else if (key == "epsilon") {
      c.epsilon = value;
    } else if (key == "s") {
      c.s = to_count(value, "s");
    } else if (key == "multiplier") {
      c.multiplier = to_count(value, "multiplier");
    } else if (key == "ell") {
      for (auto& u : c.users) u.ell = to_count(value, "ell");
    } else if (key == "m") {
      for (auto& u : c.users) u.m = to_count(value, "m");
    } else {
      dgmt::fail(dgmt::Errc::kParameter, "unknown config parameter '" + key + "'");
    }
    c.validate();
    config->config = std::move(c);
  });
}

dgmt_status dgmt_config_user_count(const dgmt_config* config, size_t* out) {
  DGMT_REQUIRE(config);
  DGMT_REQUIRE(out);
  *out = config->config.population_size();
  return DGMT_OK;
}

dgmt_status dgmt_config_to_json(const dgmt_config* config, char** out) {
  DGMT_REQUIRE(config);
  DGMT_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = copy_string(dgmt::config_to_json(config->config)); });
}

void dgmt_string_free(char* s) { std::free(s); }

void dgmt_run_options_init(dgmt_run_options* options) {
  if (options == nullptr) return;
  options->seed = 1;
  options->trials = 100;
  options->record_timing = 1;
  options->workers = 1;
}

dgmt_status dgmt_run(const dgmt_config* config, const dgmt_run_options* options,
                     dgmt_report** out) {
  DGMT_REQUIRE(config);
  DGMT_REQUIRE(options);
  DGMT_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    dgmt::RunOptions run;
    run.seed = options->seed;
    run.record_timing = options->record_timing != 0;
    run.workers = options->workers;
    auto report = dgmt::estimate_error(config->config, options->trials, config->config.mean_modes, run);
    *out = new dgmt_report{config->config, std::move(report)};
  });
}

void dgmt_report_free(dgmt_report* report) { delete report; }

dgmt_status dgmt_report_worst_rate(const dgmt_report* report, double* out) {
  DGMT_REQUIRE(report);
  DGMT_REQUIRE(out);
  *out = report->report.estimate.worst_rate;
  return DGMT_OK;
}

dgmt_status dgmt_report_type1_rate(const dgmt_report* report, double* out) {
  DGMT_REQUIRE(report);
  DGMT_REQUIRE(out);
  if (!report->report.estimate.type1) {
    return set_error(DGMT_ERR_PARAMETER, "report has no null-mode trials");
  }
  *out = report->report.estimate.type1->rate;
  return DGMT_OK;
}

dgmt_status dgmt_report_type2_rate(const dgmt_report* report, dgmt_mean_mode mode, double* out) {
  DGMT_REQUIRE(report);
  DGMT_REQUIRE(out);
  for (const auto& r : report->report.estimate.type2) {
    if (static_cast<int>(r.mode) == static_cast<int>(mode)) {
      *out = r.rate;
      return DGMT_OK;
    }
  }
  return set_error(DGMT_ERR_PARAMETER, "report has no trials for that alternative mode");
}

dgmt_status dgmt_report_audit_violations(const dgmt_report* report, size_t* out) {
  DGMT_REQUIRE(report);
  DGMT_REQUIRE(out);
  *out = report->report.audit_violations.size();
  return DGMT_OK;
}

dgmt_status dgmt_report_write_csv(const dgmt_report* report, const char* path) {
  DGMT_REQUIRE(report);
  DGMT_REQUIRE(path);
  return guarded([&] {
    std::ofstream out(path, std::ios::binary);
    if (!out) dgmt::fail(dgmt::Errc::kIo, std::string("cannot open '") + path + "' for writing");
    dgmt::write_csv(out, report->report.records);
    out.flush();
    if (!out) dgmt::fail(dgmt::Errc::kIo, std::string("write to '") + path + "' failed");
  });
}

dgmt_status dgmt_report_summary_json(const dgmt_report* report, char** out) {
  DGMT_REQUIRE(report);
  DGMT_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    auto j = nlohmann::json::parse(dgmt::estimate_to_json(report->report.estimate));
    j["protocol"] = dgmt::protocol_name(report->config.protocol);
    j["users"] = report->config.population_size();
    j["audit_violations"] = report->report.audit_violations;
    *out = copy_string(j.dump(2));
  });
}

void dgmt_calibration_options_init(dgmt_calibration_options* options) {
  if (options == nullptr) return;
  const dgmt::CalibrationOptions defaults;
  options->seed = defaults.seed;
  options->trials_per_mode = defaults.trials_per_mode;
  options->start_multiplier = defaults.start_multiplier;
  options->max_multiplier = defaults.max_multiplier;
  options->workers = defaults.workers;
}

dgmt_status dgmt_calibrate(const dgmt_config* config, double target,
                           const dgmt_calibration_options* options,
                           dgmt_calibration_result* out) {
  DGMT_REQUIRE(config);
  DGMT_REQUIRE(options);
  DGMT_REQUIRE(out);
  return guarded([&] {
    dgmt::CalibrationOptions opts;
    opts.seed = options->seed;
    opts.trials_per_mode = options->trials_per_mode;
    opts.start_multiplier = options->start_multiplier;
    opts.max_multiplier = options->max_multiplier;
    opts.workers = options->workers;
    const auto r = dgmt::calibrate(config->config, target, opts);
    out->multiplier = r.multiplier;
    out->users = r.users;
    out->worst_rate = r.estimate.worst_rate;
    out->theoretical_scaling = r.theoretical_scaling;
    out->achieved_constant = r.achieved_constant;
    out->steps = r.history.size();
    out->audit_violations = r.audit_violations;
  });
}

dgmt_status dgmt_trial(const dgmt_config* config, dgmt_mean_mode mode, size_t trial,
                       uint64_t seed, dgmt_verdict* verdict, uint8_t** transcript,
                       size_t* transcript_len) {
  DGMT_REQUIRE(config);
  DGMT_REQUIRE(verdict);
  DGMT_REQUIRE(transcript);
  DGMT_REQUIRE(transcript_len);
  *transcript = nullptr;
  *transcript_len = 0;
  if (mode < DGMT_MEAN_NULL || mode > DGMT_MEAN_RANDOM_DIRECTION) {
    return set_error(DGMT_ERR_PARAMETER, "unknown mean mode");
  }
  return guarded([&] {
    const auto r = dgmt::run_trial(config->config, static_cast<dgmt::MeanMode>(mode), trial, seed);
    const auto bytes = dgmt::serialize_transcript(r.run.transcript);
    auto* buf = static_cast<uint8_t*>(std::malloc(bytes.empty() ? 1 : bytes.size()));
    if (buf == nullptr) throw std::bad_alloc();
    std::memcpy(buf, bytes.data(), bytes.size());
    *transcript = buf;
    *transcript_len = bytes.size();
    *verdict = r.run.decision.verdict == dgmt::Verdict::kReject ? DGMT_REJECT : DGMT_ACCEPT;
  });
}

void dgmt_bytes_free(uint8_t* bytes) { std::free(bytes); }

dgmt_status dgmt_fwht(double* values, size_t length) {
  DGMT_REQUIRE(values);
  return guarded([&] { dgmt::fwht_inplace({values, length}); });
}

dgmt_status dgmt_collision_statistic(const uint8_t* bits, size_t n, size_t dim, double* out) {
  DGMT_REQUIRE(bits);
  DGMT_REQUIRE(out);
  return guarded([&] {
    dgmt::BitSampleMatrix m(n, dim, std::vector<std::uint8_t>(bits, bits + n * dim));
    *out = dgmt::collision_statistic(m);
  });
}

}  // extern "C"
