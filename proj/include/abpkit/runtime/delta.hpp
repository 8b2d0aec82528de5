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

// Transition functions and their execution over sequences and streams.

#ifndef ABPKIT_RUNTIME_DELTA_HPP_
#define ABPKIT_RUNTIME_DELTA_HPP_

#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "abpkit/errors.hpp"
#include "abpkit/show.hpp"
#include "abpkit/stream/timed_stream.hpp"

namespace abpkit::runtime {

using stream::Seq;
using stream::Ticked;
using stream::TimedStream;

// Result of one transition: the successor state and the emitted outputs.
template <class S, class O>
struct Step {
  S state;
  std::vector<O> outputs;

  friend bool operator==(const Step&, const Step&) = default;
};

// A pure transition function (state, input) -> (state, outputs).
template <class S, class I, class O>
using Delta = std::function<Step<S, O>(const S&, const I&)>;

// Runs `delta` over a finite input sequence. Returns the final state and the
// concatenated outputs.
template <class S, class I, class O>
Step<S, O> run_machine(S start, const Delta<S, I, O>& delta,
                       const std::vector<I>& inputs) {
  Step<S, O> acc{std::move(start), {}};
  for (const auto& in : inputs) {
    auto step = delta(acc.state, in);
    acc.state = std::move(step.state);
    acc.outputs.insert(acc.outputs.end(),
                       std::make_move_iterator(step.outputs.begin()),
                       std::make_move_iterator(step.outputs.end()));
  }
  return acc;
}

// Per-step trajectory: entry k is the state after input k and the outputs of
// that step.
template <class S, class I, class O>
std::vector<Step<S, O>> trace_machine(S start, const Delta<S, I, O>& delta,
                                      const std::vector<I>& inputs) {
  std::vector<Step<S, O>> steps;
  steps.reserve(inputs.size());
  S state = std::move(start);
  for (const auto& in : inputs) {
    auto step = delta(state, in);
    state = step.state;
    steps.push_back(std::move(step));
  }
  return steps;
}

// Lazy execution. The outputs for input k become available once inputs
// 1..k have been consumed; nothing beyond that is demanded.
template <class S, class I, class O>
Seq<O> exec_machine(S start, Delta<S, I, O> delta, Seq<I> inputs) {
  return Seq<O>([start = std::move(start), delta = std::move(delta),
                 inputs = std::move(inputs)] {
    struct State {
      S machine;
      typename Seq<I>::Cursor next;
      std::deque<O> pending;
    };
    auto st = std::make_shared<State>(State{start, inputs.open(), {}});
    return typename Seq<O>::Cursor([st, delta]() -> std::optional<O> {
      while (st->pending.empty()) {
        auto in = st->next();
        if (!in) return std::nullopt;
        auto step = delta(st->machine, *in);
        st->machine = std::move(step.state);
        for (auto& o : step.outputs) st->pending.push_back(std::move(o));
      }
      O out = std::move(st->pending.front());
      st->pending.pop_front();
      return out;
    });
  });
}

// Timed execution. The output horizon equals the input horizon, which holds
// for tick-preserving deltas such as those built by lift_timed and
// attach_timer.
template <class S, class I, class O>
TimedStream<O> exec_machine(S start, Delta<S, Ticked<I>, Ticked<O>> delta,
                            const TimedStream<I>& inputs) {
  return TimedStream<O>(
      exec_machine<S, Ticked<I>, Ticked<O>>(std::move(start), std::move(delta),
                                            inputs.items()),
      inputs.horizon());
}

// Makes an untimed delta time-aware: ticks loop on every state and are
// echoed; messages go through the inner delta.
template <class S, class I, class O>
Delta<S, Ticked<I>, Ticked<O>> lift_timed(Delta<S, I, O> inner) {
  return [inner = std::move(inner)](const S& s,
                                    const Ticked<I>& in) -> Step<S, Ticked<O>> {
    if (in.is_tick()) return {s, {stream::tick<O>()}};
    auto step = inner(s, in.payload());
    std::vector<Ticked<O>> outs;
    outs.reserve(step.outputs.size());
    for (auto& o : step.outputs) outs.push_back(stream::msg(std::move(o)));
    return {std::move(step.state), std::move(outs)};
  };
}

namespace detail {

template <class T>
std::string describe(const T& x) {
  std::ostringstream os;
  show(os, x);
  return os.str();
}

}  // namespace detail

// Delta assembled from guarded clauses tried in order, the first matching
// clause wins. A (state, input) pair that matches no clause raises
// ModelError naming the pair.
template <class S, class I, class O>
class ClauseDelta {
 public:
  using Guard = std::function<bool(const S&, const I&)>;
  using Body = std::function<Step<S, O>(const S&, const I&)>;

  explicit ClauseDelta(std::string machine) : machine_(std::move(machine)) {}

  ClauseDelta& on(std::string name, Guard guard, Body body) {
    clauses_.push_back({std::move(name), std::move(guard), std::move(body)});
    return *this;
  }

  Delta<S, I, O> build() const {
    auto clauses = std::make_shared<const std::vector<Clause>>(clauses_);
    return [machine = machine_, clauses](const S& s, const I& i) {
      for (const auto& c : *clauses) {
        if (c.guard(s, i)) return c.body(s, i);
      }
      throw ModelError("ModelError: no transition of '" + machine +
                       "' for state=" + detail::describe(s) +
                       " input=" + detail::describe(i));
    };
  }

 private:
  struct Clause {
    std::string name;
    Guard guard;
    Body body;
  };

  std::string machine_;
  std::vector<Clause> clauses_;
};

}  // namespace abpkit::runtime

#endif  // ABPKIT_RUNTIME_DELTA_HPP_
