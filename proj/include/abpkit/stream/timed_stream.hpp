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

// Timed streams: sequences of messages interleaved with clock ticks.
//
// A tick closes a time slot; the messages of a slot are the (possibly empty)
// run of messages strictly before its tick. Streams that are conceptually
// infinite are represented by re-openable lazy sequences (`Seq`). Every
// observation opens a fresh cursor, so observing a stream definition twice
// yields the same items. A single cursor is single-consumer.

#ifndef ABPKIT_STREAM_TIMED_STREAM_HPP_
#define ABPKIT_STREAM_TIMED_STREAM_HPP_

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <iterator>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "abpkit/errors.hpp"
#include "abpkit/show.hpp"

namespace abpkit::stream {

struct TickTag {
  friend constexpr auto operator<=>(TickTag, TickTag) = default;
};

// A message or a clock tick.
template <class M>
class Ticked {
 public:
  using payload_type = M;

  static Ticked tick() { return Ticked(TickTag{}); }
  static Ticked msg(M payload) { return Ticked(std::move(payload)); }

  bool is_tick() const noexcept { return std::holds_alternative<TickTag>(v_); }
  bool is_msg() const noexcept { return !is_tick(); }

  const M& payload() const {
    if (is_tick()) throw UsageError("Ticked::payload() called on a tick");
    return std::get<M>(v_);
  }

  friend bool operator==(const Ticked&, const Ticked&) = default;
  friend auto operator<=>(const Ticked&, const Ticked&) = default;

 private:
  explicit Ticked(TickTag t) : v_(t) {}
  explicit Ticked(M m) : v_(std::move(m)) {}

  std::variant<TickTag, M> v_;
};

template <class M>
Ticked<M> tick() {
  return Ticked<M>::tick();
}

template <class M>
Ticked<M> msg(M payload) {
  return Ticked<M>::msg(std::move(payload));
}

template <class M>
std::ostream& operator<<(std::ostream& os, const Ticked<M>& t) {
  if (t.is_tick()) return os << "Tick";
  show(os, t.payload());
  return os;
}

// ---------------------------------------------------------------------------
// Finite untimed sequences.

template <class M>
using UntimedSeq = std::vector<M>;

template <class M>
UntimedSeq<M> empty() {
  return {};
}

template <class M>
const M& head_of(const UntimedSeq<M>& s) {
  if (s.empty()) throw EmptyStream();
  return s.front();
}

template <class M>
UntimedSeq<M> tail_of(const UntimedSeq<M>& s) {
  if (s.empty()) throw EmptyStream();
  return UntimedSeq<M>(std::next(s.begin()), s.end());
}

template <class M>
std::size_t length_of(const UntimedSeq<M>& s) {
  return s.size();
}

template <class M>
UntimedSeq<M> concat(const UntimedSeq<M>& a, const UntimedSeq<M>& b) {
  UntimedSeq<M> out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Subsequence of `s` whose elements are members of `keep`, order preserved.
template <class T>
std::vector<T> filter_set(const std::set<T>& keep, const std::vector<T>& s) {
  std::vector<T> out;
  std::copy_if(s.begin(), s.end(), std::back_inserter(out),
               [&](const T& x) { return keep.contains(x); });
  return out;
}

template <class T, class Pred>
std::vector<T> filter_if(Pred keep, const std::vector<T>& s) {
  std::vector<T> out;
  std::copy_if(s.begin(), s.end(), std::back_inserter(out), keep);
  return out;
}

// Filtering a bounded observation by the whole message set: drops the ticks
// and unwraps the payloads.
template <class M>
UntimedSeq<M> messages_of(const std::vector<Ticked<M>>& items) {
  UntimedSeq<M> out;
  for (const auto& it : items) {
    if (it.is_msg()) out.push_back(it.payload());
  }
  return out;
}

template <class M>
std::size_t tick_count(const std::vector<Ticked<M>>& items) {
  return static_cast<std::size_t>(std::count_if(
      items.begin(), items.end(), [](const Ticked<M>& t) { return t.is_tick(); }));
}

// ---------------------------------------------------------------------------
// Lazy sequences.

template <class T>
class Seq {
 public:
  using value_type = T;
  // Yields the next item, or nullopt once the sequence has ended.
  using Cursor = std::function<std::optional<T>()>;
  using Factory = std::function<Cursor()>;

  explicit Seq(Factory factory) : factory_(std::move(factory)) {}

  Cursor open() const { return factory_(); }

  static Seq from(std::vector<T> items) {
    auto shared = std::make_shared<const std::vector<T>>(std::move(items));
    return Seq([shared] {
      return Cursor([shared, i = std::size_t{0}]() mutable -> std::optional<T> {
        if (i >= shared->size()) return std::nullopt;
        return (*shared)[i++];
      });
    });
  }

  static Seq repeat(T item) {
    return Seq([item] {
      return Cursor([item]() -> std::optional<T> { return item; });
    });
  }

 private:
  Factory factory_;
};

template <class T>
std::vector<T> take(const Seq<T>& s, std::size_t n) {
  std::vector<T> out;
  if (n == 0) return out;
  auto next = s.open();
  while (out.size() < n) {
    auto item = next();
    if (!item) break;
    out.push_back(std::move(*item));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Timed streams.

template <class M>
class TimedStream {
 public:
  using payload_type = M;
  using item_type = Ticked<M>;
  using Cursor = typename Seq<Ticked<M>>::Cursor;

  // `horizon`, when present, is the number of ticks the producer emits before
  // ending. Without it the stream is treated as unbounded.
  TimedStream(Seq<Ticked<M>> items, std::optional<std::size_t> horizon)
      : items_(std::move(items)), horizon_(horizon) {}

  Cursor open() const { return items_.open(); }
  const Seq<Ticked<M>>& items() const noexcept { return items_; }
  std::optional<std::size_t> horizon() const noexcept { return horizon_; }

 private:
  Seq<Ticked<M>> items_;
  std::optional<std::size_t> horizon_;
};

// Per slot k: the messages of slots[k] in order, then one tick.
template <class M>
TimedStream<M> inject_ticks(const std::vector<UntimedSeq<M>>& slots) {
  std::vector<Ticked<M>> items;
  for (const auto& slot : slots) {
    for (const auto& m : slot) items.push_back(msg(m));
    items.push_back(tick<M>());
  }
  return TimedStream<M>(Seq<Ticked<M>>::from(std::move(items)), slots.size());
}

// A finite item list. The declared horizon is its tick count.
template <class M>
TimedStream<M> from_items(std::vector<Ticked<M>> items) {
  const std::size_t ticks = tick_count(items);
  return TimedStream<M>(Seq<Ticked<M>>::from(std::move(items)), ticks);
}

// All-tick stream; unbounded unless `slots` is given.
template <class M>
TimedStream<M> silent(std::optional<std::size_t> slots = std::nullopt) {
  if (slots) {
    return inject_ticks(std::vector<UntimedSeq<M>>(*slots));
  }
  return TimedStream<M>(Seq<Ticked<M>>::repeat(tick<M>()), std::nullopt);
}

// Items of `a` followed by items of `b`. `b` is not opened until `a` ends.
template <class M>
TimedStream<M> concat(const TimedStream<M>& a, const TimedStream<M>& b) {
  std::optional<std::size_t> horizon;
  if (a.horizon() && b.horizon()) horizon = *a.horizon() + *b.horizon();
  using Cursor = typename TimedStream<M>::Cursor;
  Seq<Ticked<M>> items([a, b] {
    struct State {
      Cursor first;
      std::optional<Cursor> second;
    };
    auto st = std::make_shared<State>(State{a.open(), std::nullopt});
    return Cursor([st, b]() -> std::optional<Ticked<M>> {
      if (!st->second) {
        if (auto item = st->first()) return item;
        st->second = b.open();
      }
      return (*st->second)();
    });
  });
  return TimedStream<M>(std::move(items), horizon);
}

// `prefix ++ s`; used for feedback initializers.
template <class M>
TimedStream<M> prepend(std::vector<Ticked<M>> prefix, const TimedStream<M>& s) {
  return concat(from_items(std::move(prefix)), s);
}

template <class M>
std::vector<Ticked<M>> take_items(const TimedStream<M>& s, std::size_t n) {
  return take(s.items(), n);
}

// The message runs of the first `k` slots. Stops early if the stream ends;
// messages after the last tick seen are not part of any slot.
template <class M>
std::vector<UntimedSeq<M>> take_slots(const TimedStream<M>& s, std::size_t k) {
  std::vector<UntimedSeq<M>> slots;
  if (k == 0) return slots;
  auto next = s.open();
  UntimedSeq<M> current;
  while (slots.size() < k) {
    auto item = next();
    if (!item) break;
    if (item->is_tick()) {
      slots.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(item->payload());
    }
  }
  return slots;
}

// Payloads occurring in the first `slots` time slots, ticks removed.
template <class M>
UntimedSeq<M> untime(const TimedStream<M>& s, std::size_t slots) {
  if (s.horizon() && slots > *s.horizon()) {
    throw UsageError("untime: " + std::to_string(slots) +
                     " slots requested beyond declared horizon " +
                     std::to_string(*s.horizon()));
  }
  UntimedSeq<M> out;
  for (auto& slot : take_slots(s, slots)) {
    out.insert(out.end(), std::make_move_iterator(slot.begin()),
               std::make_move_iterator(slot.end()));
  }
  return out;
}

// Item count of a finite stream. Streams without a declared horizon have no
// computable length.
template <class M>
std::size_t length_of(const TimedStream<M>& s) {
  if (!s.horizon()) {
    throw UsageError("length_of: stream has no declared horizon");
  }
  std::size_t n = 0;
  auto next = s.open();
  while (next()) ++n;
  return n;
}

// Trace rendering: payload literals, ticks as `~`, separated by spaces.
template <class M>
std::string render_trace(const std::vector<Ticked<M>>& items) {
  std::ostringstream os;
  bool first = true;
  for (const auto& it : items) {
    if (!first) os << ' ';
    first = false;
    if (it.is_tick()) {
      os << '~';
    } else {
      show(os, it.payload());
    }
  }
  return os.str();
}

}  // namespace abpkit::stream

#endif  // ABPKIT_STREAM_TIMED_STREAM_HPP_
