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

// Transition and path testers for delta functions. Comparison is structural
// equality of state and of the ordered output sequence.

#ifndef ABPKIT_TESTKIT_TESTERS_HPP_
#define ABPKIT_TESTKIT_TESTERS_HPP_

#include <cstddef>
#include <exception>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "abpkit/errors.hpp"
#include "abpkit/runtime/delta.hpp"
#include "abpkit/show.hpp"

namespace abpkit::testkit {

using runtime::Delta;
using runtime::Step;

struct Verdict {
  std::string id;
  bool passed = false;
  // Expected vs. actual on failure, or the model failure message.
  std::string detail;
  bool model_failure = false;
};

template <class S, class I, class O>
struct TransitionCase {
  std::string id;
  S start;
  I input;
  S expect_state;
  std::vector<O> expect_outputs;
};

namespace detail {

template <class S, class O>
std::string describe_step(const S& state, const std::vector<O>& outputs) {
  std::ostringstream os;
  os << '(';
  show(os, state);
  os << ", ";
  show(os, outputs);
  os << ')';
  return os.str();
}

}  // namespace detail

template <class S, class I, class O>
Verdict trans_test(const Delta<S, I, O>& delta, const TransitionCase<S, I, O>& c) {
  Verdict v{c.id, false, {}, false};
  try {
    auto step = delta(c.start, c.input);
    v.passed = step.state == c.expect_state && step.outputs == c.expect_outputs;
    if (!v.passed) {
      v.detail = "expected " + detail::describe_step(c.expect_state, c.expect_outputs) +
                 " got " + detail::describe_step(step.state, step.outputs);
    }
  } catch (const ModelFailure& e) {
    v.model_failure = true;
    v.detail = e.what();
  }
  return v;
}

// Full: per-step (state, outputs). StatesOnly: per-step states.
// OutputsOnly: the concatenated outputs of the whole path.
template <class S, class O>
struct FullPath {
  std::vector<Step<S, O>> steps;
};
template <class S>
struct StatesOnly {
  std::vector<S> states;
};
template <class O>
struct OutputsOnly {
  std::vector<O> outputs;
};

template <class S, class I, class O>
struct PathCase {
  std::string id;
  S start;
  std::vector<I> inputs;
  std::variant<FullPath<S, O>, StatesOnly<S>, OutputsOnly<O>> expectation;
};

struct StepVerdict {
  std::size_t index = 0;
  bool passed = false;
  // Set on every step after the first failing one: from there on the actual
  // trajectory has left the expected one.
  bool after_divergence = false;
  std::string detail;
};

struct PathVerdict {
  std::string id;
  bool passed = false;
  // One entry per input for full and states-only expectations; empty for
  // outputs-only.
  std::vector<StepVerdict> steps;
  std::string detail;
  bool model_failure = false;
};

template <class S, class I, class O>
PathVerdict path_test(const Delta<S, I, O>& delta, const PathCase<S, I, O>& c) {
  PathVerdict v{c.id, false, {}, {}, false};
  std::vector<Step<S, O>> actual;
  try {
    actual = runtime::trace_machine(c.start, delta, c.inputs);
  } catch (const ModelFailure& e) {
    v.model_failure = true;
    v.detail = e.what();
    return v;
  }

  if (const auto* out = std::get_if<OutputsOnly<O>>(&c.expectation)) {
    std::vector<O> flat;
    for (const auto& s : actual) flat.insert(flat.end(), s.outputs.begin(), s.outputs.end());
    v.passed = flat == out->outputs;
    if (!v.passed) {
      std::ostringstream os;
      os << "expected outputs ";
      show(os, out->outputs);
      os << " got ";
      show(os, flat);
      v.detail = os.str();
    }
    return v;
  }

  const std::size_t expected_len =
      std::visit([](const auto& e) -> std::size_t {
        using E = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<E, FullPath<S, O>>) return e.steps.size();
        else if constexpr (std::is_same_v<E, StatesOnly<S>>) return e.states.size();
        else return 0;
      }, c.expectation);
  if (expected_len != c.inputs.size()) {
    v.detail = "expectation has " + std::to_string(expected_len) + " steps for " +
               std::to_string(c.inputs.size()) + " inputs";
    return v;
  }

  bool diverged = false;
  v.passed = true;
  for (std::size_t k = 0; k < actual.size(); ++k) {
    StepVerdict sv{k, false, diverged, {}};
    if (const auto* full = std::get_if<FullPath<S, O>>(&c.expectation)) {
      const auto& want = full->steps[k];
      sv.passed = actual[k] == want;
      if (!sv.passed) {
        sv.detail = "expected " + detail::describe_step(want.state, want.outputs) + " got " +
                    detail::describe_step(actual[k].state, actual[k].outputs);
      }
    } else {
      const auto& want = std::get<StatesOnly<S>>(c.expectation).states[k];
      sv.passed = actual[k].state == want;
      if (!sv.passed) {
        sv.detail = "expected state " + show_string(want) + " got " +
                    show_string(actual[k].state);
      }
    }
    if (!sv.passed) {
      diverged = true;
      v.passed = false;
      if (v.detail.empty()) v.detail = "step " + std::to_string(k) + ": " + sv.detail;
    }
    v.steps.push_back(std::move(sv));
  }
  return v;
}

}  // namespace abpkit::testkit

#endif  // ABPKIT_TESTKIT_TESTERS_HPP_
