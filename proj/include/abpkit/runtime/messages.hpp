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

// Message algebra of the runtime: channel-tagged unions and the timer
// input/output wrappers.

#ifndef ABPKIT_RUNTIME_MESSAGES_HPP_
#define ABPKIT_RUNTIME_MESSAGES_HPP_

#include <compare>
#include <ostream>
#include <utility>
#include <variant>

#include "abpkit/errors.hpp"
#include "abpkit/show.hpp"

namespace abpkit::runtime {

// A message from channel A or channel B. The source channel is carried by
// the variant index, so A and B may be the same type.
template <class A, class B>
class Merged {
 public:
  static Merged from_a(A a) { return Merged(std::in_place_index<0>, std::move(a)); }
  static Merged from_b(B b) { return Merged(std::in_place_index<1>, std::move(b)); }

  bool is_a() const noexcept { return v_.index() == 0; }
  bool is_b() const noexcept { return v_.index() == 1; }

  const A& a() const {
    if (!is_a()) throw UsageError("Merged::a() on a channel-B message");
    return std::get<0>(v_);
  }
  const B& b() const {
    if (!is_b()) throw UsageError("Merged::b() on a channel-A message");
    return std::get<1>(v_);
  }

  friend bool operator==(const Merged&, const Merged&) = default;
  friend auto operator<=>(const Merged&, const Merged&) = default;

 private:
  template <std::size_t I, class T>
  Merged(std::in_place_index_t<I> idx, T&& value) : v_(idx, std::forward<T>(value)) {}

  std::variant<A, B> v_;
};

template <class A, class B>
std::ostream& operator<<(std::ostream& os, const Merged<A, B>& m) {
  if (m.is_a()) {
    os << "A(";
    show_args(os, m.a());
  } else {
    os << "B(";
    show_args(os, m.b());
  }
  return os << ')';
}

struct TimeoutTag {
  friend constexpr auto operator<=>(TimeoutTag, TimeoutTag) = default;
};

// Input of a machine that owns a timer.
template <class T>
class TimerIn {
 public:
  static TimerIn msg(T payload) { return TimerIn(std::move(payload)); }
  static TimerIn timeout() { return TimerIn(TimeoutTag{}); }

  bool is_timeout() const noexcept { return std::holds_alternative<TimeoutTag>(v_); }
  bool is_msg() const noexcept { return !is_timeout(); }

  const T& payload() const {
    if (is_timeout()) throw UsageError("TimerIn::payload() on TimeoutEvent");
    return std::get<T>(v_);
  }

  friend bool operator==(const TimerIn&, const TimerIn&) = default;
  friend auto operator<=>(const TimerIn&, const TimerIn&) = default;

 private:
  explicit TimerIn(T payload) : v_(std::move(payload)) {}
  explicit TimerIn(TimeoutTag t) : v_(t) {}

  std::variant<T, TimeoutTag> v_;
};

template <class T>
std::ostream& operator<<(std::ostream& os, const TimerIn<T>& in) {
  if (in.is_timeout()) return os << "Timeout";
  os << "MsgI(";
  show_args(os, in.payload());
  return os << ')';
}

struct SetTimerCmd {
  int slots;
  friend constexpr auto operator<=>(SetTimerCmd, SetTimerCmd) = default;
};

inline constexpr int kTimerDisabled = -1;

// Output of a machine that owns a timer: a message or a timer command.
// SetTimer(n) arms the timer for n slots; SetTimer(-1) disables it. Other
// values are rejected when the command is interpreted (attach_timer).
template <class T>
class TimerOut {
 public:
  static TimerOut msg(T payload) { return TimerOut(std::move(payload)); }
  static TimerOut set_timer(int slots) { return TimerOut(SetTimerCmd{slots}); }

  bool is_set_timer() const noexcept { return std::holds_alternative<SetTimerCmd>(v_); }
  bool is_msg() const noexcept { return !is_set_timer(); }

  const T& payload() const {
    if (is_set_timer()) throw UsageError("TimerOut::payload() on SetTimer");
    return std::get<T>(v_);
  }
  int timer_slots() const {
    if (!is_set_timer()) throw UsageError("TimerOut::timer_slots() on MsgO");
    return std::get<SetTimerCmd>(v_).slots;
  }

  friend bool operator==(const TimerOut&, const TimerOut&) = default;
  friend auto operator<=>(const TimerOut&, const TimerOut&) = default;

 private:
  explicit TimerOut(T payload) : v_(std::move(payload)) {}
  explicit TimerOut(SetTimerCmd c) : v_(c) {}

  std::variant<T, SetTimerCmd> v_;
};

template <class T>
std::ostream& operator<<(std::ostream& os, const TimerOut<T>& out) {
  if (out.is_set_timer()) return os << "SetTimer(" << out.timer_slots() << ')';
  os << "MsgO(";
  show_args(os, out.payload());
  return os << ')';
}

}  // namespace abpkit::runtime

#endif  // ABPKIT_RUNTIME_MESSAGES_HPP_
