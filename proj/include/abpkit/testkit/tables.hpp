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

// Test tables: JSON documents of transition and path cases whose values are
// written in the literal grammar.
//
//   { "machine": "sender",              // default for records below
//     "cases": [
//       { "id": "...", "start": "(true,[])", "input": "true",
//         "expectState": "(true,[])", "expectOutputs": "[]" },
//       { "id": "...", "start": "(true,[])", "inputs": ["3", "true"],
//         "expectStates": ["(true,[3])", "(false,[])"] } ] }
//
// A record with "inputs" is a path case; its expectation is exactly one of
// "expectSteps" (each "(state,[outputs])"), "expectStates" or
// "expectOutputs". `//` comments are allowed.
//
// Value forms per machine:
//   sender    state (bit,[payloads]); input int | bool | Timeout, or the
//             tagged A(p) | B(b) | MsgI(..); output MsgO(b,p) | SetTimer(n)
//   medium    state [bits] (explicit) | Cyclic([bits]); input int | Tick;
//             output int | Tick
//   receiver  state bool; input (b,p); output A(b) | B(p)

#ifndef ABPKIT_TESTKIT_TABLES_HPP_
#define ABPKIT_TESTKIT_TABLES_HPP_

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "abpkit/abp/medium.hpp"
#include "abpkit/abp/types.hpp"
#include "abpkit/stream/timed_stream.hpp"
#include "abpkit/testkit/coverage.hpp"
#include "abpkit/testkit/literal.hpp"
#include "abpkit/testkit/testers.hpp"

namespace abpkit::testkit {

namespace codec {

using abp::Payload;

abp::SenderState<Payload> sender_state(const Value& v);
abp::SenderIn<Payload> sender_input(const Value& v);
abp::SenderOut<Payload> sender_output(const Value& v);
abp::MediumState medium_state(const Value& v);
stream::Ticked<Payload> medium_message(const Value& v);
abp::ReceiverState receiver_state(const Value& v);
abp::SignedMsg<Payload> signed_msg(const Value& v);
abp::ReceiverOut<Payload> receiver_output(const Value& v);

}  // namespace codec

inline const std::vector<std::string>& machine_names() {
  static const std::vector<std::string> names{"sender", "medium", "receiver"};
  return names;
}

// One parsed record, values still in literal form.
struct TableCase {
  enum class Kind { kTransition, kPathFull, kPathStates, kPathOutputs };

  std::string id;
  std::string machine;
  Kind kind = Kind::kTransition;
  Value start;
  std::vector<Value> inputs;  // exactly one for transition cases
  Value expect_state;         // transition cases
  std::vector<Value> expect;  // outputs, or per-step states / steps
  std::string source;         // document name, for diagnostics
};

struct TableDocument {
  std::string name;
  std::vector<TableCase> cases;
};

// Throws ParseError naming the offending field.
TableDocument parse_table(std::string_view json_text, const std::string& name);

struct CaseResult {
  std::string id;
  std::string machine;
  std::string source;
  bool path = false;
  bool passed = false;
  bool model_failure = false;
  std::string detail;
  std::vector<StepVerdict> steps;
};

// Runs table cases through instrumented deltas and accumulates coverage per
// machine over everything run.
class SuiteRunner {
 public:
  SuiteRunner();
  ~SuiteRunner();
  SuiteRunner(const SuiteRunner&) = delete;
  SuiteRunner& operator=(const SuiteRunner&) = delete;

  // Decodes every case first, so a malformed document runs nothing. Throws
  // ParseError, or UsageError when a step matches several catalog entries.
  std::vector<CaseResult> run(const TableDocument& doc);

  // In machine_names() order.
  std::vector<CoverageReport> coverage() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace abpkit::testkit

#endif  // ABPKIT_TESTKIT_TABLES_HPP_
