// Copyright 2026 The abpkit Authors.
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

// System-level scenarios: an input schedule, one oracle per medium and a slot
// horizon, plus the identity check that replays them.
//
// JSON form:
//   { "name": "...", "description": "...",
//     "schedule": [[1], [], [2]],            // slot k -> payloads
//     "oracles": { "data": {"kind": "cyclic", "bits": [true]},
//                  "ack":  {"kind": "bernoulli", "drop": 0.3, "seed": 7} },
//     "horizon": 10, "seed": 42,
//     "timeout": 3, "senderInitialBit": true, "receiverInitialBit": true }
//
// Oracle kinds are explicit and cyclic (with "bits") and bernoulli (with
// "drop" and optional "seed"; a missing seed is derived from the scenario
// seed). name, description, oracles, seed and the last three fields are
// optional; oracles default to all-pass.

#ifndef ABPKIT_TESTKIT_SCENARIO_HPP_
#define ABPKIT_TESTKIT_SCENARIO_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "abpkit/abp/oracle.hpp"
#include "abpkit/abp/system.hpp"

namespace abpkit::testkit {

struct ScenarioSpec {
  std::string name;
  std::string description;
  std::vector<std::vector<abp::Payload>> schedule;
  abp::OracleStream data_oracle = abp::OracleStream::all_pass();
  abp::OracleStream ack_oracle = abp::OracleStream::all_pass();
  std::size_t horizon = 1;
  std::optional<std::uint64_t> seed;
  abp::AbpConfig config;

  std::vector<abp::Payload> payloads() const;
  stream::TimedStream<abp::Payload> input() const;

  friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

// Throws ParseError naming the offending field.
void validate(const ScenarioSpec& s);

// Returns a validated scenario; throws ParseError naming the offending field.
ScenarioSpec parse_scenario(std::string_view json_text, const std::string& name = "scenario");

// Pretty-printed JSON with a fixed key order; parse_scenario inverts it.
std::string scenario_to_json(const ScenarioSpec& s);

struct GenerateBounds {
  std::size_t max_payloads = 5;
  std::size_t max_horizon = 1000;
  double drop_probability = 0.3;
  int timeout = abp::kDefaultTimeout;
};

// Slots after the last scheduled payload that make delivery of `payloads`
// messages plausible when each medium drops with `drop_probability`.
std::size_t delivery_budget(std::size_t payloads, double drop_probability, int timeout);

// Deterministic in `seed`. Throws UsageError on invalid bounds.
ScenarioSpec generate_scenario(std::uint64_t seed, const GenerateBounds& bounds = {});

// splitmix64 finalizer; derives independent seeds from one base seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

enum class IdentityOutcome { kPass, kFail, kInconclusive };

const char* to_string(IdentityOutcome o);

struct IdentityResult {
  IdentityOutcome outcome = IdentityOutcome::kFail;
  std::vector<abp::Payload> expected;
  std::vector<abp::Payload> delivered;
  // First index where the delivered sequence departs from the expected one.
  std::optional<std::size_t> divergence;
  std::string detail;
  std::vector<std::string> warnings;
  abp::AbpRun run;
};

// Model failures inside the run propagate.
IdentityResult check_identity(const ScenarioSpec& s);

}  // namespace abpkit::testkit

#endif  // ABPKIT_TESTKIT_SCENARIO_HPP_
