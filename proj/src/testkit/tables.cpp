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

#include "abpkit/testkit/tables.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <utility>

#include <json.hpp>

#include "abpkit/abp/receiver.hpp"
#include "abpkit/abp/sender.hpp"
#include "abpkit/errors.hpp"
#include "abpkit/testkit/catalogs.hpp"

namespace abpkit::testkit {

using nlohmann::json;

namespace codec {
namespace {

[[noreturn]] void bad(const std::string& what, const Value& v) {
  throw ParseError(what + ", got '" + to_string(v) + "'");
}

// Arguments of a tagged value with the given tag and arity; a single tuple
// argument is spread, so MsgO((true,3)) reads like MsgO(true,3).
const std::vector<Value>& tag_args(const Value& v, std::size_t arity) {
  const auto& args = v.args();
  if (args.size() == 1 && arity > 1 && args.front().is(Value::Kind::kTuple)) {
    const auto& inner = args.front().as_tuple();
    if (inner.size() == arity) return inner;
  }
  if (args.size() != arity) {
    bad(v.tag() + " takes " + std::to_string(arity) + " argument(s)", v);
  }
  return args;
}

std::vector<bool> bit_list(const Value& v) {
  std::vector<bool> bits;
  for (const auto& b : v.as_list()) bits.push_back(b.as_bool());
  return bits;
}

}  // namespace

abp::SenderState<Payload> sender_state(const Value& v) {
  if (!v.is(Value::Kind::kTuple) || v.as_tuple().size() != 2) {
    bad("sender state is (bit,[payloads])", v);
  }
  abp::SenderState<Payload> s;
  s.bit = v.as_tuple()[0].as_bool();
  for (const auto& p : v.as_tuple()[1].as_list()) s.buffer.push_back(p.as_int());
  return s;
}

abp::SenderIn<Payload> sender_input(const Value& v) {
  using In = abp::SenderIn<Payload>;
  using M = runtime::Merged<Payload, abp::Bit>;
  if (v.is(Value::Kind::kInt)) return In::msg(M::from_a(v.as_int()));
  if (v.is(Value::Kind::kBool)) return In::msg(M::from_b(v.as_bool()));
  if (v.is_tag("Timeout") && v.args().empty()) return In::timeout();
  if (v.is_tag("A")) return In::msg(M::from_a(tag_args(v, 1)[0].as_int()));
  if (v.is_tag("B")) return In::msg(M::from_b(tag_args(v, 1)[0].as_bool()));
  if (v.is_tag("MsgI")) {
    const auto& inner = tag_args(v, 1)[0];
    if (inner.is_tag("Timeout")) bad("MsgI wraps a payload or an ack", v);
    return sender_input(inner);
  }
  bad("sender input is a payload, an ack or Timeout", v);
}

abp::SenderOut<Payload> sender_output(const Value& v) {
  using Out = abp::SenderOut<Payload>;
  if (v.is_tag("MsgO")) {
    const auto& a = tag_args(v, 2);
    return Out::msg({a[0].as_bool(), a[1].as_int()});
  }
  if (v.is_tag("SetTimer")) return Out::set_timer(static_cast<int>(tag_args(v, 1)[0].as_int()));
  bad("sender output is MsgO(bit,payload) or SetTimer(n)", v);
}

abp::MediumState medium_state(const Value& v) {
  if (v.is(Value::Kind::kList)) return abp::OracleStream::explicit_bits(bit_list(v)).open();
  if (v.is_tag("Cyclic")) {
    try {
      return abp::OracleStream::cyclic(bit_list(tag_args(v, 1)[0])).open();
    } catch (const UsageError& e) {
      throw ParseError(e.what());
    }
  }
  bad("medium state is [bits] or Cyclic([bits])", v);
}

stream::Ticked<Payload> medium_message(const Value& v) {
  if (v.is(Value::Kind::kInt)) return stream::Ticked<Payload>::msg(v.as_int());
  if (v.is_tag("Tick") && v.args().empty()) return stream::Ticked<Payload>::tick();
  bad("medium message is a payload or Tick", v);
}

abp::ReceiverState receiver_state(const Value& v) { return abp::ReceiverState{v.as_bool()}; }

abp::SignedMsg<Payload> signed_msg(const Value& v) {
  if (!v.is(Value::Kind::kTuple) || v.as_tuple().size() != 2) bad("message is (bit,payload)", v);
  return {v.as_tuple()[0].as_bool(), v.as_tuple()[1].as_int()};
}

abp::ReceiverOut<Payload> receiver_output(const Value& v) {
  using Out = abp::ReceiverOut<Payload>;
  if (v.is_tag("A")) return Out::from_a(tag_args(v, 1)[0].as_bool());
  if (v.is_tag("B")) return Out::from_b(tag_args(v, 1)[0].as_int());
  bad("receiver output is A(bit) or B(payload)", v);
}

}  // namespace codec

namespace {

std::string field_name(const std::string& doc, std::size_t index, const std::string& key) {
  return doc + ": cases[" + std::to_string(index) + "]" + (key.empty() ? "" : "." + key);
}

Value literal_field(const json& rec, const std::string& key, const std::string& field) {
  if (!rec.contains(key)) throw ParseError("missing field", field);
  const auto& j = rec.at(key);
  if (!j.is_string()) throw ParseError("expected a literal string", field);
  try {
    return parse_literal(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(e.what(), field);
  }
}

std::vector<Value> literal_array(const json& rec, const std::string& key,
                                 const std::string& field) {
  const auto& j = rec.at(key);
  if (!j.is_array()) throw ParseError("expected an array of literal strings", field);
  std::vector<Value> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string f = field + "[" + std::to_string(k) + "]";
    if (!j[k].is_string()) throw ParseError("expected a literal string", f);
    try {
      out.push_back(parse_literal(j[k].get<std::string>()));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), f);
    }
  }
  return out;
}

}  // namespace

TableDocument parse_table(std::string_view json_text, const std::string& name) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end(), nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), name);
  }
  if (!doc.is_object()) throw ParseError("table must be a JSON object", name);
  std::string default_machine;
  if (doc.contains("machine")) {
    if (!doc["machine"].is_string()) throw ParseError("expected a string", name + ": machine");
    default_machine = doc["machine"].get<std::string>();
  }
  if (!doc.contains("cases") || !doc["cases"].is_array()) {
    throw ParseError("missing array", name + ": cases");
  }

  TableDocument out{name, {}};
  std::set<std::string> seen;
  const auto& cases = doc["cases"];
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto& rec = cases[k];
    const std::string where = field_name(name, k, "");
    if (!rec.is_object()) throw ParseError("case must be an object", where);

    TableCase c;
    c.source = name;
    if (!rec.contains("id") || !rec["id"].is_string()) {
      throw ParseError("missing string", field_name(name, k, "id"));
    }
    c.id = rec["id"].get<std::string>();
    if (!seen.insert(c.id).second) {
      throw ParseError("duplicate id '" + c.id + "'", field_name(name, k, "id"));
    }
    c.machine = default_machine;
    if (rec.contains("machine")) {
      if (!rec["machine"].is_string()) {
        throw ParseError("expected a string", field_name(name, k, "machine"));
      }
      c.machine = rec["machine"].get<std::string>();
    }
    const auto& machines = machine_names();
    if (std::find(machines.begin(), machines.end(), c.machine) == machines.end()) {
      throw ParseError("unknown machine '" + c.machine + "'", field_name(name, k, "machine"));
    }
    c.start = literal_field(rec, "start", field_name(name, k, "start"));

    if (rec.contains("inputs")) {
      c.inputs = literal_array(rec, "inputs", field_name(name, k, "inputs"));
      const int n = rec.contains("expectSteps") + rec.contains("expectStates") +
                    rec.contains("expectOutputs");
      if (n != 1) {
        throw ParseError("path case needs exactly one of expectSteps, expectStates, expectOutputs",
                         where);
      }
      if (rec.contains("expectSteps")) {
        c.kind = TableCase::Kind::kPathFull;
        c.expect = literal_array(rec, "expectSteps", field_name(name, k, "expectSteps"));
      } else if (rec.contains("expectStates")) {
        c.kind = TableCase::Kind::kPathStates;
        c.expect = literal_array(rec, "expectStates", field_name(name, k, "expectStates"));
      } else {
        c.kind = TableCase::Kind::kPathOutputs;
        const auto f = field_name(name, k, "expectOutputs");
        c.expect = literal_field(rec, "expectOutputs", f).as_list();
      }
    } else {
      c.kind = TableCase::Kind::kTransition;
      c.inputs = {literal_field(rec, "input", field_name(name, k, "input"))};
      c.expect_state = literal_field(rec, "expectState", field_name(name, k, "expectState"));
      const auto f = field_name(name, k, "expectOutputs");
      const Value outs = literal_field(rec, "expectOutputs", f);
      if (!outs.is(Value::Kind::kList)) throw ParseError("expected a list literal", f);
      c.expect = outs.as_list();
    }
    out.cases.push_back(std::move(c));
  }
  return out;
}

namespace {

template <class S, class I, class O>
struct MachineCodec {
  std::function<S(const Value&)> state;
  std::function<I(const Value&)> input;
  std::function<O(const Value&)> output;
};

template <class T, class F>
std::vector<T> decode_all(const std::vector<Value>& vs, F f) {
  std::vector<T> out;
  for (const auto& v : vs) out.push_back(f(v));
  return out;
}

template <class S, class I, class O>
std::function<CaseResult()> prepare(const TableCase& c, std::size_t index,
                                    const MachineCodec<S, I, O>& codec,
                                    const TransitionCatalog<S, I>& catalog,
                                    const runtime::Delta<S, I, O>& delta) {
  const auto field = [&](const std::string& key) { return field_name(c.source, index, key); };
  const auto guarded = [&](const std::string& key, auto fn) {
    try {
      return fn();
    } catch (const ParseError& e) {
      throw ParseError(e.what(), field(key));
    }
  };

  S start = guarded("start", [&] { return codec.state(c.start); });
  std::vector<I> inputs = guarded("input", [&] { return decode_all<I>(c.inputs, codec.input); });
  if (!inputs.empty()) catalog.check_deterministic({{start, inputs.front()}});

  CaseResult base{c.id, c.machine, c.source, c.kind != TableCase::Kind::kTransition,
                  false, false, {}, {}};

  if (c.kind == TableCase::Kind::kTransition) {
    TransitionCase<S, I, O> tc{c.id, start, inputs.front(),
                               guarded("expectState", [&] { return codec.state(c.expect_state); }),
                               guarded("expectOutputs", [&] {
                                 return decode_all<O>(c.expect, codec.output);
                               })};
    return [delta, tc, base]() mutable {
      const Verdict v = trans_test(delta, tc);
      base.passed = v.passed;
      base.model_failure = v.model_failure;
      base.detail = v.detail;
      return base;
    };
  }

  PathCase<S, I, O> pc{c.id, start, inputs, OutputsOnly<O>{}};
  if (c.kind == TableCase::Kind::kPathFull) {
    pc.expectation = guarded("expectSteps", [&] {
      FullPath<S, O> full;
      for (const auto& step : c.expect) {
        if (!step.is(Value::Kind::kTuple) || step.as_tuple().size() != 2) {
          throw ParseError("step is (state,[outputs]), got '" + to_string(step) + "'");
        }
        full.steps.push_back({codec.state(step.as_tuple()[0]),
                              decode_all<O>(step.as_tuple()[1].as_list(), codec.output)});
      }
      return full;
    });
  } else if (c.kind == TableCase::Kind::kPathStates) {
    pc.expectation = guarded("expectStates", [&] {
      return StatesOnly<S>{decode_all<S>(c.expect, codec.state)};
    });
  } else {
    pc.expectation = guarded("expectOutputs", [&] {
      return OutputsOnly<O>{decode_all<O>(c.expect, codec.output)};
    });
  }
  return [delta, pc, base]() mutable {
    const PathVerdict v = path_test(delta, pc);
    base.passed = v.passed;
    base.model_failure = v.model_failure;
    base.detail = v.detail;
    base.steps = v.steps;
    return base;
  };
}

using abp::Payload;
using SenderDelta = runtime::Delta<abp::SenderState<Payload>, abp::SenderIn<Payload>,
                                   abp::SenderOut<Payload>>;
using MediumDelta =
    runtime::Delta<abp::MediumState, stream::Ticked<Payload>, stream::Ticked<Payload>>;
using ReceiverDelta = runtime::Delta<abp::ReceiverState, abp::SignedMsg<Payload>,
                                     abp::ReceiverOut<Payload>>;

}  // namespace

struct SuiteRunner::Impl {
  std::pair<SenderDelta, std::shared_ptr<CoverageAccumulator>> sender =
      instrument(abp::sender_delta<Payload>(), sender_catalog());
  std::pair<MediumDelta, std::shared_ptr<CoverageAccumulator>> medium =
      instrument(abp::timed_medium_delta<Payload>(), medium_catalog());
  std::pair<ReceiverDelta, std::shared_ptr<CoverageAccumulator>> receiver =
      instrument(abp::receiver_delta<Payload>(), receiver_catalog());

  MachineCodec<abp::SenderState<Payload>, abp::SenderIn<Payload>, abp::SenderOut<Payload>>
      sender_codec{codec::sender_state, codec::sender_input, codec::sender_output};
  MachineCodec<abp::MediumState, stream::Ticked<Payload>, stream::Ticked<Payload>> medium_codec{
      codec::medium_state, codec::medium_message, codec::medium_message};
  MachineCodec<abp::ReceiverState, abp::SignedMsg<Payload>, abp::ReceiverOut<Payload>>
      receiver_codec{codec::receiver_state, codec::signed_msg, codec::receiver_output};

  CoverageAccumulator& accumulator(const std::string& machine) {
    if (machine == "sender") return *sender.second;
    if (machine == "medium") return *medium.second;
    return *receiver.second;
  }
};

SuiteRunner::SuiteRunner() : impl_(std::make_unique<Impl>()) {}
SuiteRunner::~SuiteRunner() = default;

std::vector<CaseResult> SuiteRunner::run(const TableDocument& doc) {
  std::vector<std::function<CaseResult()>> jobs;
  for (std::size_t k = 0; k < doc.cases.size(); ++k) {
    const auto& c = doc.cases[k];
    if (c.machine == "sender") {
      jobs.push_back(prepare(c, k, impl_->sender_codec, sender_catalog(), impl_->sender.first));
    } else if (c.machine == "medium") {
      jobs.push_back(prepare(c, k, impl_->medium_codec, medium_catalog(), impl_->medium.first));
    } else {
      jobs.push_back(
          prepare(c, k, impl_->receiver_codec, receiver_catalog(), impl_->receiver.first));
    }
  }
  std::vector<CaseResult> results;
  for (auto& job : jobs) {
    results.push_back(job());
    impl_->accumulator(results.back().machine).record_verdict(results.back().passed);
  }
  return results;
}

std::vector<CoverageReport> SuiteRunner::coverage() const {
  return {make_report(sender_catalog(), *impl_->sender.second),
          make_report(medium_catalog(), *impl_->medium.second),
          make_report(receiver_catalog(), *impl_->receiver.second)};
}

}  // namespace abpkit::testkit
