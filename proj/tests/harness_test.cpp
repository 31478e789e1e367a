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

#include <cmath>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "dgmt/errors.hpp"
#include "oracles.hpp"

namespace dgmt {
namespace {

PopulationConfig private_config(std::size_t multiplier) {
  PopulationConfig c;
  c.d = 16;
  c.epsilon = 1.0;
  c.protocol = ProtocolKind::kPrivate;
  c.users = {{1, 4}};
  c.multiplier = multiplier;
  return c;
}

TEST(MakeMean, Modes) {
  Rng rng(71);
  const auto spread = make_mean(MeanSpec::for_mode(MeanMode::kSpread, 1.0), 4, rng);
  EXPECT_EQ(spread, (std::vector<double>{0.5, 0.5, 0.5, 0.5}));
  const auto null = make_mean(MeanSpec::for_mode(MeanMode::kNull, 1.0), 5, rng);
  EXPECT_EQ(null, std::vector<double>(5, 0.0));
  const auto spike = make_mean(MeanSpec::for_mode(MeanMode::kSpike, 0.3), 3, rng);
  EXPECT_EQ(spike, (std::vector<double>{0.3, 0.0, 0.0}));
  for (int rep = 0; rep < 100; ++rep) {
    const auto mu = make_mean(MeanSpec::for_mode(MeanMode::kRandomDirection, 0.7), 1 + rep, rng);
    ASSERT_NEAR(std::sqrt(oracle::norm2(mu)), 0.7, 1e-12);
  }
}

TEST(GenGaussianSamples, MomentsAndReplay) {
  Rng rng(72);
  const std::vector<double> mu(6, 0.0);
  const std::size_t count = 10000;
  const auto x = gen_gaussian_samples(mu, count, rng);
  ASSERT_EQ(x.size(), count * 6);
  for (std::size_t i = 0; i < 6; ++i) {
    double s = 0.0, s2 = 0.0;
    for (std::size_t j = 0; j < count; ++j) {
      s += x[j * 6 + i];
      s2 += x[j * 6 + i] * x[j * 6 + i];
    }
    const double mean = s / count;
    EXPECT_LE(std::abs(mean), 3.0 / std::sqrt(count));
    EXPECT_NEAR(s2 / count - mean * mean, 1.0, 3.0 * std::sqrt(2.0 / count));
  }
  Rng a(5), b(5);
  EXPECT_EQ(gen_gaussian_samples(mu, 10, a), gen_gaussian_samples(mu, 10, b));
}

TEST(SignFlipProb, CentredIsHalf) { EXPECT_DOUBLE_EQ(sign_flip_prob(0.0), 0.5); }

TEST(SignFlipProb, BiasLowerBoundOnGrid) {
  for (int i = -1000; i <= 1000; ++i) {
    const double mu = i / 1000.0;
    ASSERT_GE(std::abs(sign_flip_prob(mu) - 0.5), std::abs(mu) / 8.0) << mu;
  }
}

TEST(SignFlipProb, MatchesQuantizedFrequency) {
  Rng rng(73);
  const std::vector<double> mu = {-1.0, -0.2, 0.0, 0.35, 0.9};
  const std::size_t count = 20000;
  const auto x = gen_gaussian_samples(mu, count, rng);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    std::size_t ones = 0;
    for (std::size_t j = 0; j < count; ++j) ones += x[j * mu.size() + i] > 0.0;
    const double p = sign_flip_prob(mu[i]);
    EXPECT_LE(std::abs(static_cast<double>(ones) - count * p), 3.0 * std::sqrt(count * p * (1 - p)));
  }
}

TEST(RunTrial, ReplaysAndPassesAudit) {
  auto config = private_config(16);
  for (MeanMode mode : {MeanMode::kNull, MeanMode::kSpread}) {
    const auto a = run_trial(config, mode, 7, 99);
    const auto b = run_trial(config, mode, 7, 99);
    EXPECT_EQ(a.run.transcript.messages, b.run.transcript.messages);
    EXPECT_EQ(a.run.decision.verdict, b.run.decision.verdict);
    EXPECT_TRUE(budget_audit(a.run.transcript, config).ok);
    EXPECT_NE(run_trial(config, mode, 8, 99).run.transcript.messages, a.run.transcript.messages);
  }
}

TEST(RunTrial, PadsOddDimensions) {
  auto config = private_config(16);
  config.d = 12;
  config.users = {{1, 16}};
  const auto r = run_trial(config, MeanMode::kSpike, 0, 1);
  EXPECT_EQ(config.padded_dimension(), 16u);
  EXPECT_EQ(r.run.transcript.messages[0].size(), 16u);
}

TEST(BudgetAudit, Examples) {
  PopulationConfig config = private_config(5);
  config.s = 10;
  Transcript t;
  t.messages.assign(5, BitVector(4, 1));
  t.bits_sent.assign(5, 4);
  t.public_bits_used = 10;
  EXPECT_TRUE(budget_audit(t, config).ok);

  auto inflated = t;
  inflated.bits_sent[3] = 5;
  inflated.messages[3].push_back(0);
  const auto report = budget_audit(inflated, config);
  ASSERT_FALSE(report.ok);
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_NE(report.violations[0].find("user 3"), std::string::npos);

  auto overdrawn = t;
  overdrawn.public_bits_used = 11;
  const auto seed_report = budget_audit(overdrawn, config);
  ASSERT_FALSE(seed_report.ok);
  EXPECT_NE(seed_report.violations[0].find("public seed"), std::string::npos);
}

TEST(EstimateError, AlwaysAcceptStub) {
  const auto config = private_config(4);
  const TrialRunner stub = [](const PopulationConfig& c, MeanMode, std::size_t, std::uint64_t) {
    TrialResult r;
    r.run.transcript.messages.resize(c.population_size());
    r.run.transcript.bits_sent.assign(c.population_size(), 0);
    return r;
  };
  const auto report = estimate_error(config, 40, config.mean_modes, RunOptions{}, stub);
  ASSERT_TRUE(report.estimate.type1.has_value());
  EXPECT_EQ(report.estimate.type1->rate, 0.0);
  ASSERT_EQ(report.estimate.type2.size(), 3u);
  for (const auto& r : report.estimate.type2) EXPECT_EQ(r.rate, 1.0);
  EXPECT_EQ(report.estimate.worst_rate, 1.0);
  EXPECT_EQ(report.estimate.ci_halfwidth, 0.0);
  EXPECT_TRUE(report.audit_violations.empty());
}

TEST(EstimateError, RatesMatchRecordsAndCiFormula) {
  const auto config = private_config(12);
  RunOptions options;
  options.seed = 5;
  const auto report = estimate_error(config, 60, config.mean_modes, options);
  EXPECT_EQ(report.records.size(), 240u);
  const auto again = recount(report.records, config.mean_modes);
  EXPECT_EQ(again.worst_rate, report.estimate.worst_rate);
  EXPECT_EQ(again.type1->rate, report.estimate.type1->rate);
  for (std::size_t i = 0; i < again.type2.size(); ++i) {
    EXPECT_EQ(again.type2[i].rate, report.estimate.type2[i].rate);
  }
  std::vector<ModeRate> all = report.estimate.type2;
  all.push_back(*report.estimate.type1);
  for (const auto& r : all) {
    EXPECT_GE(r.rate, 0.0);
    EXPECT_LE(r.rate, 1.0);
    EXPECT_DOUBLE_EQ(r.ci_halfwidth, 1.96 * std::sqrt(r.rate * (1 - r.rate) / 60));
  }
  EXPECT_TRUE(report.audit_violations.empty());
}

TEST(EstimateError, WorkersDoNotChangeResults) {
  const auto config = private_config(12);
  RunOptions one;
  one.record_timing = false;
  RunOptions three = one;
  three.workers = 3;
  const auto a = estimate_error(config, 30, config.mean_modes, one);
  const auto b = estimate_error(config, 30, config.mean_modes, three);
  std::ostringstream csv_a, csv_b;
  write_csv(csv_a, a.records);
  write_csv(csv_b, b.records);
  EXPECT_EQ(csv_a.str(), csv_b.str());
}

TEST(EstimateError, CsvIsReproducible) {
  const auto config = private_config(12);
  RunOptions options;
  options.record_timing = false;
  options.seed = 77;
  std::ostringstream a, b;
  write_csv(a, estimate_error(config, 20, config.mean_modes, options).records);
  write_csv(b, estimate_error(config, 20, config.mean_modes, options).records);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')),
            "trial,mean_mode,verdict,bits_total,public_bits_used,wall_micros");
}

TEST(EstimateError, DeskScaleBatchSmoke) {
  auto config = private_config(64);
  config.users = {{1, 16}};
  const auto report = estimate_error(config, 300, config.mean_modes, RunOptions{});
  EXPECT_EQ(report.estimate.trials, 300u);
  EXPECT_EQ(report.records.size(), 1200u);
  EXPECT_TRUE(report.audit_violations.empty());
}

TEST(Calibrate, RejectsTargets) {
  const auto config = private_config(1);
  EXPECT_THROW(calibrate(config, 0.0, {}), Error);
  EXPECT_THROW(calibrate(config, 0.5, {}), Error);
}

TEST(Calibrate, FindsMultiplierAndDoublingHolds) {
  auto config = private_config(1);
  config.users = {{1, 16}};
  CalibrationOptions options;
  options.trials_per_mode = 60;
  options.start_multiplier = 4;
  const auto result = calibrate(config, 0.1, options);
  EXPECT_LE(result.estimate.worst_rate, 0.1);
  EXPECT_EQ(result.history.back().multiplier, result.multiplier);
  EXPECT_NEAR(result.achieved_constant,
              static_cast<double>(result.users) / result.theoretical_scaling, 1e-12);
  auto doubled = config;
  doubled.multiplier = 2 * result.multiplier;
  RunOptions run;
  run.seed = 3;
  const auto check = estimate_error(doubled, 60, doubled.mean_modes, run);
  EXPECT_LE(check.estimate.worst_rate, 0.1 + 2 * ErrorEstimate::halfwidth(0.1, 60));
}

TEST(Calibrate, FailsAtCap) {
  auto config = private_config(1);
  CalibrationOptions options;
  options.trials_per_mode = 10;
  options.max_multiplier = 3;
  try {
    calibrate(config, 0.1, options);
    FAIL() << "expected calibration failure";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kCalibrationFailed);
  }
}

TEST(Config, ParseAndRoundTrip) {
  const auto c = parse_config(R"({"d": 12, "epsilon": 0.5, "s": 56, "protocol": "mix_and_match",
      "users": [{"m": 7, "ell": 20}, {"m": 14, "ell": 40}], "partition": [[1], [0]],
      "mean_modes": ["null", "spike"], "multiplier": 3})");
  EXPECT_EQ(c.d, 12u);
  EXPECT_EQ(c.padded_dimension(), 16u);
  EXPECT_EQ(c.protocol, ProtocolKind::kMixAndMatch);
  EXPECT_EQ(c.population_size(), 6u);
  ASSERT_TRUE(c.partition.has_value());
  const auto p = c.expanded_partition();
  ASSERT_EQ(p->groups.size(), 6u);
  EXPECT_EQ(p->groups[2], std::vector<std::size_t>{3});
  const auto back = parse_config(config_to_json(c));
  EXPECT_EQ(config_to_json(back), config_to_json(c));
}

TEST(Config, Rejections) {
  EXPECT_THROW(parse_config("{"), Error);
  EXPECT_THROW(parse_config(R"({"d": 8, "epsilon": 1.5, "protocol": "private", "users": [{"m": 1, "ell": 1}]})"),
               Error);
  EXPECT_THROW(parse_config(R"({"d": 8, "epsilon": 1, "protocol": "bogus", "users": [{"m": 1, "ell": 1}]})"),
               Error);
  EXPECT_THROW(parse_config(R"({"d": 8, "epsilon": 1, "protocol": "private", "users": [{"m": 2, "ell": 1}]})"),
               Error);
  EXPECT_THROW(parse_config(R"({"d": 8, "epsilon": 1, "protocol": "private", "users": [{"m": 1, "ell": 9}]})"),
               Error);
  EXPECT_THROW(parse_config(R"({"d": 8, "epsilon": 1, "protocol": "private", "users": []})"), Error);
  EXPECT_THROW(parse_config(R"({"d": 8, "epsilon": 1, "protocol": "private", "users": [{"m": 1, "ell": 1}],
      "partition": [[0]]})"), Error);
  try {
    load_config("/nonexistent/config.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kIo);
  }
}

TEST(TheoreticalScaling, Formulas) {
  auto c = private_config(1);
  c.d = 64;
  c.users = {{1, 8}};
  EXPECT_DOUBLE_EQ(theoretical_scaling(c), 512.0 / 8.0);
  c.epsilon = 0.5;
  EXPECT_DOUBLE_EQ(theoretical_scaling(c), 512.0 / 8.0 * 4.0);
}

}  // namespace
}  // namespace dgmt
