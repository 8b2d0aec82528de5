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

// Reference models and small processes shared by the runtime tests and the
// acceptance binary.

#ifndef ABPKIT_TESTS_RUNTIME_ORACLES_HPP_
#define ABPKIT_TESTS_RUNTIME_ORACLES_HPP_

#include <cstddef>
#include <functional>
#include <memory>
#include <random>
#include <vector>

#include "abpkit/runtime/network.hpp"
#include "abpkit/runtime/timer.hpp"

namespace abpkit::test {

struct TimerProbe {
  // Emitted by the probe when its timeout fires.
  static constexpr int kTimeoutMarker = -1;
};

// Arms the timer with the value of each message; counts timeouts.
inline runtime::Delta<runtime::TimerState<int>, stream::Ticked<int>, stream::Ticked<int>>
timer_probe_delta() {
  using Out = runtime::TimerOut<int>;
  return runtime::attach_timer<int, int, int>(
      [](int s, const runtime::TimerIn<int>& in) -> runtime::Step<int, Out> {
        if (in.is_timeout()) return {s + 1, {Out::msg(TimerProbe::kTimeoutMarker)}};
        return {s, {Out::set_timer(in.payload())}};
      });
}

// 1-based indices of the ticks that the timeout marker precedes, after
// SetTimer(n) was issued ahead of the first tick.
inline std::vector<std::size_t> timeout_ticks_actual(int n, std::size_t ticks) {
  std::vector<stream::Ticked<int>> in{stream::msg(n)};
  for (std::size_t k = 0; k < ticks; ++k) in.push_back(stream::tick<int>());
  const auto out =
      runtime::run_machine(runtime::TimerState<int>{0, runtime::kTimerDisabled},
                           timer_probe_delta(), in);
  std::vector<std::size_t> fired;
  std::size_t seen_ticks = 0;
  for (const auto& o : out.outputs) {
    if (o.is_tick()) {
      ++seen_ticks;
    } else if (o.payload() == TimerProbe::kTimeoutMarker) {
      fired.push_back(seen_ticks + 1);
    }
  }
  return fired;
}

// Deadline model: arming at tick count t with n gives a deadline of t + n;
// the timeout is raised while processing the tick whose 1-based index equals
// the deadline.
inline std::vector<std::size_t> timeout_ticks_oracle(int n, std::size_t ticks) {
  std::vector<std::size_t> fired;
  const std::size_t deadline = static_cast<std::size_t>(n);
  for (std::size_t k = 1; k <= ticks; ++k) {
    if (k == deadline) fired.push_back(k);
  }
  return fired;
}

inline std::vector<std::vector<int>> random_slots(std::mt19937& rng, std::size_t slots,
                                                  std::size_t max_per_slot) {
  std::vector<std::vector<int>> out(slots);
  for (auto& slot : out) {
    slot.resize(rng() % (max_per_slot + 1));
    for (auto& x : slot) x = static_cast<int>(rng() % 100);
  }
  return out;
}

// One input, one output; applies f to every message.
inline runtime::ProcessFactory<int> map_process(std::function<int(int)> f) {
  struct Map final : runtime::Process<int> {
    std::function<int(int)> f;
    std::vector<std::vector<int>> step_slot(const std::vector<std::vector<int>>& in) override {
      std::vector<int> out;
      for (int x : in[0]) out.push_back(f(x));
      return {out};
    }
  };
  return [f] {
    auto p = std::make_unique<Map>();
    p->f = f;
    return std::unique_ptr<runtime::Process<int>>(std::move(p));
  };
}

// Two inputs, one output; emits the sum of the slot when either input is
// non-empty.
inline runtime::ProcessFactory<int> sum_process() {
  struct Sum final : runtime::Process<int> {
    std::vector<std::vector<int>> step_slot(const std::vector<std::vector<int>>& in) override {
      if (in[0].empty() && in[1].empty()) return {{}};
      int total = 0;
      for (const auto& port : in) {
        for (int x : port) total += x;
      }
      return {{total}};
    }
  };
  return [] { return std::unique_ptr<runtime::Process<int>>(std::make_unique<Sum>()); };
}

}  // namespace abpkit::test

#endif  // ABPKIT_TESTS_RUNTIME_ORACLES_HPP_
