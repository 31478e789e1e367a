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
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "dgmt/errors.hpp"
#include "dgmt/hadamard.hpp"
#include "dgmt/harness.hpp"

namespace dgmt {
namespace {

using nlohmann::json;

constexpr const char* kProtocolNames[] = {"private", "limited", "hetero_samples", "hetero_comm",
                                          "mix_and_match"};
constexpr const char* kModeNames[] = {"null", "spike", "spread", "random_direction"};

std::size_t read_count(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
    fail(Errc::kParameter, std::string("config: '") + key + "' must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

const char* protocol_name(ProtocolKind p) { return kProtocolNames[static_cast<int>(p)]; }

ProtocolKind parse_protocol(const std::string& name) {
  for (int i = 0; i < 5; ++i) {
    if (name == kProtocolNames[i]) return static_cast<ProtocolKind>(i);
  }
  fail(Errc::kParameter, "unknown protocol '" + name + "'");
}

const char* mean_mode_name(MeanMode m) { return kModeNames[static_cast<int>(m)]; }

MeanMode parse_mean_mode(const std::string& name) {
  for (int i = 0; i < 4; ++i) {
    if (name == kModeNames[i]) return static_cast<MeanMode>(i);
  }
  fail(Errc::kParameter, "unknown mean mode '" + name + "'");
}

MeanSpec MeanSpec::for_mode(MeanMode mode, double epsilon) {
  return {mode, mode == MeanMode::kNull ? 0.0 : epsilon};
}

std::size_t PopulationConfig::padded_dimension() const { return ceil_power_of_two(d); }

void PopulationConfig::validate() const {
  if (d < 1) fail(Errc::kDimension, "config: d must be >= 1");
  if (!(epsilon > 0.0 && epsilon <= 1.0)) fail(Errc::kParameter, "config: epsilon must lie in (0, 1]");
  if (users.empty()) fail(Errc::kParameter, "config: users must be nonempty");
  if (multiplier < 1) fail(Errc::kParameter, "config: multiplier must be >= 1");
  if (mean_modes.empty()) fail(Errc::kParameter, "config: mean_modes must be nonempty");
  for (std::size_t k = 0; k < users.size(); ++k) {
    if (users[k].m < 1 || users[k].ell < 1) {
      fail(Errc::kParameter, "config: user " + std::to_string(k) + " needs m >= 1 and ell >= 1");
    }
  }
  const bool one_sample = protocol == ProtocolKind::kPrivate ||
                          protocol == ProtocolKind::kLimited ||
                          protocol == ProtocolKind::kHeteroComm;
  const bool fixed_budget = protocol == ProtocolKind::kPrivate ||
                            protocol == ProtocolKind::kLimited ||
                            protocol == ProtocolKind::kHeteroSamples;
  for (const auto& u : users) {
    if (one_sample && u.m != 1) {
      fail(Errc::kParameter, std::string("config: protocol '") + protocol_name(protocol) +
                                 "' requires m = 1 for every user");
    }
    if (fixed_budget && u.ell != users.front().ell) {
      fail(Errc::kParameter, std::string("config: protocol '") + protocol_name(protocol) +
                                 "' requires a common ell");
    }
  }
  if ((protocol == ProtocolKind::kPrivate || protocol == ProtocolKind::kLimited) &&
      users.front().ell > padded_dimension()) {
    fail(Errc::kParameter, "config: ell exceeds the padded dimension");
  }
  if (partition) {
    if (protocol != ProtocolKind::kMixAndMatch) {
      fail(Errc::kParameter, "config: a partition is only meaningful for mix_and_match");
    }
    validate_partition(*partition, users.size());
  }
}

std::vector<UserSpec> PopulationConfig::expanded_users() const {
  std::vector<UserSpec> out;
  out.reserve(population_size());
  for (std::size_t r = 0; r < multiplier; ++r) out.insert(out.end(), users.begin(), users.end());
  return out;
}

std::optional<Partition> PopulationConfig::expanded_partition() const {
  if (!partition) return std::nullopt;
  Partition out;
  out.groups.reserve(partition->groups.size() * multiplier);
  for (std::size_t r = 0; r < multiplier; ++r) {
    for (const auto& group : partition->groups) {
      auto& g = out.groups.emplace_back(group);
      for (auto& i : g) i += r * users.size();
    }
  }
  return out;
}

PopulationConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(Errc::kParameter, std::string("config: invalid JSON: ") + e.what());
  }
  PopulationConfig c;
  try {
    c.d = read_count(j, "d");
    c.epsilon = j.at("epsilon").get<double>();
    c.s = j.contains("s") ? read_count(j, "s") : 0;
    c.protocol = parse_protocol(j.at("protocol").get<std::string>());
    for (const auto& u : j.at("users")) {
      c.users.push_back({read_count(u, "m"), read_count(u, "ell")});
    }
    if (j.contains("partition") && !j["partition"].is_null()) {
      c.partition = Partition{j["partition"].get<std::vector<std::vector<std::size_t>>>()};
    }
    if (j.contains("mean_modes")) {
      c.mean_modes.clear();
      for (const auto& m : j["mean_modes"]) c.mean_modes.push_back(parse_mean_mode(m.get<std::string>()));
    }
    if (j.contains("multiplier")) c.multiplier = read_count(j, "multiplier");
  } catch (const json::exception& e) {
    fail(Errc::kParameter, std::string("config: ") + e.what());
  }
  c.validate();
  return c;
}

PopulationConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::kIo, "cannot open config '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string config_to_json(const PopulationConfig& config) {
  json j;
  j["d"] = config.d;
  j["epsilon"] = config.epsilon;
  j["s"] = config.s;
  j["protocol"] = protocol_name(config.protocol);
  j["users"] = json::array();
  for (const auto& u : config.users) j["users"].push_back({{"m", u.m}, {"ell", u.ell}});
  if (config.partition) j["partition"] = config.partition->groups;
  j["mean_modes"] = json::array();
  for (auto m : config.mean_modes) j["mean_modes"].push_back(mean_mode_name(m));
  j["multiplier"] = config.multiplier;
  return j.dump(2);
}

}  // namespace dgmt
