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

#include "abpkit/testkit/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

#include "abpkit/errors.hpp"

namespace abpkit::testkit {

using nlohmann::ordered_json;
using abp::OracleStream;
using abp::Payload;

std::vector<Payload> ScenarioSpec::payloads() const {
  std::vector<Payload> out;
  for (const auto& slot : schedule) out.insert(out.end(), slot.begin(), slot.end());
  return out;
}

stream::TimedStream<Payload> ScenarioSpec::input() const { return stream::inject_ticks(schedule); }

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void validate(const ScenarioSpec& s) {
  if (s.horizon < 1) throw ParseError("must be at least 1", "horizon");
  if (s.schedule.size() > s.horizon) {
    throw ParseError("schedule has " + std::to_string(s.schedule.size()) +
                         " slots, more than the horizon of " + std::to_string(s.horizon),
                     "schedule");
  }
  if (s.config.timeout < 1) throw ParseError("must be at least 1", "timeout");
  const bool randomized = s.data_oracle.kind() == OracleStream::Kind::kBernoulli ||
                          s.ack_oracle.kind() == OracleStream::Kind::kBernoulli;
  if (randomized && !s.seed) throw ParseError("required with a bernoulli oracle", "seed");
}

namespace {

template <class T>
T get_field(const ordered_json& j, const char* key, const std::string& field) {
  try {
    return j.at(key).get<T>();
  } catch (const ordered_json::exception&) {
    throw ParseError("missing or mistyped", field);
  }
}

OracleStream parse_oracle(const ordered_json& j, const std::string& field,
                          const std::optional<std::uint64_t>& scenario_seed,
                          std::uint64_t stream) {
  if (!j.is_object()) throw ParseError("oracle must be an object", field);
  const auto kind = get_field<std::string>(j, "kind", field + ".kind");
  try {
    if (kind == "explicit" || kind == "cyclic") {
      const auto bits = get_field<std::vector<bool>>(j, "bits", field + ".bits");
      return kind == "explicit" ? OracleStream::explicit_bits(bits) : OracleStream::cyclic(bits);
    }
    if (kind == "bernoulli") {
      const double drop = get_field<double>(j, "drop", field + ".drop");
      std::uint64_t seed = 0;
      if (j.contains("seed")) {
        seed = get_field<std::uint64_t>(j, "seed", field + ".seed");
      } else if (scenario_seed) {
        seed = mix_seed(*scenario_seed, stream);
      } else {
        throw ParseError("bernoulli oracle needs its own or the scenario seed", field + ".seed");
      }
      return OracleStream::bernoulli(drop, seed);
    }
  } catch (const UsageError& e) {
    throw ParseError(e.what(), field);
  }
  throw ParseError("unknown oracle kind '" + kind + "'", field + ".kind");
}

ordered_json oracle_json(const OracleStream& o) {
  ordered_json j;
  switch (o.kind()) {
    case OracleStream::Kind::kExplicit:
      j["kind"] = "explicit";
      j["bits"] = o.bits();
      break;
    case OracleStream::Kind::kCyclic:
      j["kind"] = "cyclic";
      j["bits"] = o.bits();
      break;
    case OracleStream::Kind::kBernoulli:
      j["kind"] = "bernoulli";
      j["drop"] = o.drop_probability();
      j["seed"] = o.seed();
      break;
  }
  return j;
}

}  // namespace

ScenarioSpec parse_scenario(std::string_view json_text, const std::string& name) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text.begin(), json_text.end(), nullptr, true, true);
  } catch (const ordered_json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), name);
  }
  if (!j.is_object()) throw ParseError("scenario must be a JSON object", name);

  static const std::vector<std::string> known{
      "name",    "description", "schedule", "oracles",          "horizon",
      "seed",    "timeout",     "senderInitialBit", "receiverInitialBit"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ParseError("unknown field", key);
    }
  }

  ScenarioSpec s;
  s.name = j.contains("name") ? get_field<std::string>(j, "name", "name") : name;
  if (j.contains("description")) s.description = get_field<std::string>(j, "description", "description");
  if (!j.contains("schedule") || !j["schedule"].is_array()) {
    throw ParseError("missing array of slots", "schedule");
  }
  for (std::size_t k = 0; k < j["schedule"].size(); ++k) {
    const std::string field = "schedule[" + std::to_string(k) + "]";
    const auto& slot = j["schedule"][k];
    if (!slot.is_array()) throw ParseError("slot must be an array of payloads", field);
    auto& out = s.schedule.emplace_back();
    for (const auto& p : slot) {
      if (!p.is_number_integer()) throw ParseError("payload must be an integer", field);
      out.push_back(p.get<Payload>());
    }
  }
  if (!j.contains("horizon") || !j["horizon"].is_number_integer() ||
      j["horizon"].get<std::int64_t>() < 1) {
    throw ParseError("must be an integer >= 1", "horizon");
  }
  s.horizon = j["horizon"].get<std::size_t>();
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ParseError("must be an unsigned integer", "seed");
    s.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("oracles")) {
    const auto& o = j["oracles"];
    if (!o.is_object()) throw ParseError("must be an object", "oracles");
    for (const auto& [key, value] : o.items()) {
      if (key != "data" && key != "ack") throw ParseError("unknown medium", "oracles." + key);
    }
    if (o.contains("data")) s.data_oracle = parse_oracle(o["data"], "oracles.data", s.seed, 1);
    if (o.contains("ack")) s.ack_oracle = parse_oracle(o["ack"], "oracles.ack", s.seed, 2);
  }
  if (j.contains("timeout")) {
    if (!j["timeout"].is_number_integer()) throw ParseError("must be an integer", "timeout");
    s.config.timeout = j["timeout"].get<int>();
  }
  if (j.contains("senderInitialBit")) {
    s.config.sender_initial_bit = get_field<bool>(j, "senderInitialBit", "senderInitialBit");
  }
  if (j.contains("receiverInitialBit")) {
    s.config.receiver_initial_bit =
        get_field<bool>(j, "receiverInitialBit", "receiverInitialBit");
  }
  validate(s);
  return s;
}

std::string scenario_to_json(const ScenarioSpec& s) {
  ordered_json j;
  j["name"] = s.name;
  if (!s.description.empty()) j["description"] = s.description;
  ordered_json schedule = ordered_json::array();
  for (const auto& slot : s.schedule) schedule.push_back(slot);
  j["schedule"] = schedule;
  j["oracles"] = {{"data", oracle_json(s.data_oracle)}, {"ack", oracle_json(s.ack_oracle)}};
  j["horizon"] = s.horizon;
  if (s.seed) j["seed"] = *s.seed;
  j["timeout"] = s.config.timeout;
  j["senderInitialBit"] = s.config.sender_initial_bit;
  j["receiverInitialBit"] = s.config.receiver_initial_bit;
  return j.dump(2) + "\n";
}

std::size_t delivery_budget(std::size_t payloads, double drop_probability, int timeout) {
  // A round trip succeeds with probability q; on average 1/q rounds are
  // needed and each costs at most timeout + 2 slots. The factor 2 leaves
  // room for the tail of the geometric distribution.
  const double q = (1.0 - drop_probability) * (1.0 - drop_probability);
  const auto rounds = static_cast<std::size_t>(std::ceil(2.0 / q));
  return payloads * static_cast<std::size_t>(timeout + 2) * rounds;
}

ScenarioSpec generate_scenario(std::uint64_t seed, const GenerateBounds& b) {
  if (b.max_payloads < 1) throw UsageError("max payloads must be at least 1");
  if (b.max_horizon < 1) throw UsageError("max horizon must be at least 1");
  if (!(b.drop_probability >= 0.0 && b.drop_probability < 1.0)) {
    throw UsageError("drop probability must lie in [0,1)");
  }
  if (b.timeout < 1) throw UsageError("timeout must be at least 1");

  std::mt19937_64 rng(mix_seed(seed, 0));
  std::uniform_int_distribution<std::size_t> count(1, b.max_payloads);
  std::uniform_int_distribution<std::size_t> gap(0, 2);
  std::uniform_int_distribution<Payload> value(0, 99);

  const std::size_t wanted = count(rng);
  std::vector<std::pair<std::size_t, Payload>> placed;
  std::size_t slot = 0;
  for (std::size_t k = 0; k < wanted; ++k) {
    slot += gap(rng);
    placed.emplace_back(slot, value(rng));
  }

  // Drop trailing payloads until the sized horizon fits the bound.
  std::size_t n = wanted;
  auto horizon_for = [&](std::size_t m) {
    return placed[m - 1].first + 1 + delivery_budget(m, b.drop_probability, b.timeout);
  };
  while (n > 1 && horizon_for(n) > b.max_horizon) --n;

  ScenarioSpec s;
  s.name = "generated-" + std::to_string(seed);
  s.seed = seed;
  s.config.timeout = b.timeout;
  if (horizon_for(n) <= b.max_horizon) {
    s.horizon = horizon_for(n);
    s.schedule.resize(placed[n - 1].first + 1);
    for (std::size_t k = 0; k < n; ++k) s.schedule[placed[k].first].push_back(placed[k].second);
  } else {
    s.horizon = b.max_horizon;
    s.schedule = {{placed.front().second}};
  }
  if (b.drop_probability > 0.0) {
    s.data_oracle = OracleStream::bernoulli(b.drop_probability, mix_seed(seed, 1));
    s.ack_oracle = OracleStream::bernoulli(b.drop_probability, mix_seed(seed, 2));
  }
  std::ostringstream d;
  d << n << " payload(s), drop " << b.drop_probability << " on both media";
  s.description = d.str();
  return s;
}

const char* to_string(IdentityOutcome o) {
  switch (o) {
    case IdentityOutcome::kPass: return "pass";
    case IdentityOutcome::kFail: return "fail";
    case IdentityOutcome::kInconclusive: return "inconclusive";
  }
  return "?";
}

IdentityResult check_identity(const ScenarioSpec& s) {
  validate(s);
  std::vector<std::string> warnings;
  if (auto w = s.data_oracle.fairness_warning(s.horizon)) warnings.push_back("data oracle: " + *w);
  if (auto w = s.ack_oracle.fairness_warning(s.horizon)) warnings.push_back("ack oracle: " + *w);

  auto run = abp::run_abp({s.data_oracle, s.ack_oracle}, s.input(), s.horizon, s.config);
  std::vector<Payload> delivered;
  for (const auto& slot : run.wire(abp::wires::kOutput).slots) {
    for (const auto& v : slot) delivered.push_back(v.payload());
  }

  IdentityResult r{IdentityOutcome::kPass, s.payloads(), std::move(delivered), std::nullopt,
                   {}, std::move(warnings), std::move(run)};
  const auto& want = r.expected;
  const auto& got = r.delivered;
  const auto [wi, gi] = std::mismatch(want.begin(), want.end(), got.begin(), got.end());
  if (wi == want.end() && gi == got.end()) return r;

  r.divergence = static_cast<std::size_t>(gi - got.begin());
  std::ostringstream os;
  if (gi == got.end()) {
    r.outcome = IdentityOutcome::kInconclusive;
    os << "delivered " << got.size() << " of " << want.size() << " payloads within "
       << s.horizon << " slots";
  } else {
    r.outcome = IdentityOutcome::kFail;
    os << "payload " << *r.divergence << ": ";
    if (wi == want.end()) {
      os << "unexpected extra delivery " << *gi;
    } else {
      os << "expected " << *wi << ", delivered " << *gi;
    }
  }
  r.detail = os.str();
  return r;
}

}  // namespace abpkit::testkit
