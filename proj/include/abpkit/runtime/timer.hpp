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

#ifndef ABPKIT_RUNTIME_TIMER_HPP_
#define ABPKIT_RUNTIME_TIMER_HPP_

#include <ostream>
#include <utility>
#include <vector>

#include "abpkit/errors.hpp"
#include "abpkit/runtime/delta.hpp"
#include "abpkit/runtime/messages.hpp"
#include "abpkit/show.hpp"

namespace abpkit::runtime {

// State of a machine extended with its timer counter.
//   counter == -1  disabled
//   counter ==  0  transient; treated as disabled on a tick
//   counter >=  1  slots remaining until the timeout fires
template <class S>
struct TimerState {
  S machine;
  int counter = kTimerDisabled;

  friend bool operator==(const TimerState&, const TimerState&) = default;
};

template <class S>
std::ostream& operator<<(std::ostream& os, const TimerState<S>& s) {
  os << '(';
  show(os, s.machine);
  return os << ',' << s.counter << ')';
}

// Wraps a delta that speaks TimerIn/TimerOut into a timed delta that owns a
// countdown timer.
//
// On a message: the inner delta runs on MsgI; MsgO outputs are emitted in
// order, SetTimer outputs update the counter (the last one wins).
// On a tick: a counter >= 2 is decremented; a counter of 1 is disabled and the
// inner delta runs on TimeoutEvent, its outputs processed as above. The tick
// is always emitted last.
template <class S, class I, class O>
Delta<TimerState<S>, Ticked<I>, Ticked<O>> attach_timer(
    Delta<S, TimerIn<I>, TimerOut<O>> inner) {
  return [inner = std::move(inner)](const TimerState<S>& st, const Ticked<I>& in)
             -> Step<TimerState<S>, Ticked<O>> {
    TimerState<S> next = st;
    std::vector<Ticked<O>> outs;
    auto absorb = [&](Step<S, TimerOut<O>> step) {
      next.machine = std::move(step.state);
      for (auto& o : step.outputs) {
        if (o.is_set_timer()) {
          const int n = o.timer_slots();
          if (n != kTimerDisabled && n < 1) throw InvalidTimerValue(n);
          next.counter = n;
        } else {
          outs.push_back(stream::msg(o.payload()));
        }
      }
    };

    if (in.is_msg()) {
      absorb(inner(next.machine, TimerIn<I>::msg(in.payload())));
      return {std::move(next), std::move(outs)};
    }

    if (next.counter >= 2) {
      --next.counter;
    } else if (next.counter == 1) {
      next.counter = kTimerDisabled;
      absorb(inner(next.machine, TimerIn<I>::timeout()));
    }
    outs.push_back(stream::tick<O>());
    return {std::move(next), std::move(outs)};
  };
}

}  // namespace abpkit::runtime

#endif  // ABPKIT_RUNTIME_TIMER_HPP_
