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

// Slot-synchronous merge of two timed streams and its inverse.

#ifndef ABPKIT_RUNTIME_MERGE_HPP_
#define ABPKIT_RUNTIME_MERGE_HPP_

#include <algorithm>
#include <deque>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "abpkit/runtime/messages.hpp"
#include "abpkit/stream/timed_stream.hpp"

namespace abpkit::runtime {

using stream::Ticked;
using stream::TimedStream;
using stream::UntimedSeq;

// One slot of the merge: A messages first, then B messages.
template <class A, class B>
std::vector<Merged<A, B>> merge_slot(const UntimedSeq<A>& a, const UntimedSeq<B>& b) {
  std::vector<Merged<A, B>> out;
  out.reserve(a.size() + b.size());
  for (const auto& x : a) out.push_back(Merged<A, B>::from_a(x));
  for (const auto& y : b) out.push_back(Merged<A, B>::from_b(y));
  return out;
}

namespace detail {

// Reads one complete slot; nullopt if the stream ends before its tick.
template <class M, class Cursor>
std::optional<UntimedSeq<M>> read_slot(Cursor& next) {
  UntimedSeq<M> slot;
  while (auto item = next()) {
    if (item->is_tick()) return slot;
    slot.push_back(item->payload());
  }
  return std::nullopt;
}

}  // namespace detail

// For each slot k: a's slot-k messages tagged A, b's slot-k messages tagged
// B, then one tick. Ends when either input ends.
template <class A, class B>
TimedStream<Merged<A, B>> merge_timed(const TimedStream<A>& a, const TimedStream<B>& b) {
  using Out = Ticked<Merged<A, B>>;
  std::optional<std::size_t> horizon;
  if (a.horizon() && b.horizon()) {
    horizon = std::min(*a.horizon(), *b.horizon());
  } else {
    horizon = a.horizon() ? a.horizon() : b.horizon();
  }
  stream::Seq<Out> items([a, b] {
    struct State {
      typename TimedStream<A>::Cursor next_a;
      typename TimedStream<B>::Cursor next_b;
      std::deque<Out> pending;
      bool ended = false;
    };
    auto st = std::make_shared<State>(State{a.open(), b.open(), {}, false});
    return typename stream::Seq<Out>::Cursor([st]() -> std::optional<Out> {
      if (st->pending.empty() && !st->ended) {
        auto sa = detail::read_slot<A>(st->next_a);
        auto sb = sa ? detail::read_slot<B>(st->next_b) : std::nullopt;
        if (!sa || !sb) {
          st->ended = true;
        } else {
          for (auto& m : merge_slot(*sa, *sb)) st->pending.push_back(stream::msg(std::move(m)));
          st->pending.push_back(stream::tick<Merged<A, B>>());
        }
      }
      if (st->pending.empty()) return std::nullopt;
      Out out = std::move(st->pending.front());
      st->pending.pop_front();
      return out;
    });
  });
  return TimedStream<Merged<A, B>>(std::move(items), horizon);
}

namespace detail {

template <class T, class A, class B, class Pick>
TimedStream<T> demux_side(const TimedStream<Merged<A, B>>& s, Pick pick) {
  stream::Seq<Ticked<T>> items([s, pick] {
    auto next = s.open();
    return typename stream::Seq<Ticked<T>>::Cursor(
        [next, pick]() mutable -> std::optional<Ticked<T>> {
          while (auto item = next()) {
            if (item->is_tick()) return stream::tick<T>();
            if (std::optional<T> v = pick(item->payload())) return stream::msg(std::move(*v));
          }
          return std::nullopt;
        });
  });
  return TimedStream<T>(std::move(items), s.horizon());
}

}  // namespace detail

// A payloads to the first output, B payloads to the second; both outputs
// receive every tick.
template <class A, class B>
std::pair<TimedStream<A>, TimedStream<B>> demux_timed(const TimedStream<Merged<A, B>>& s) {
  auto pick_a = [](const Merged<A, B>& m) -> std::optional<A> {
    if (m.is_a()) return m.a();
    return std::nullopt;
  };
  auto pick_b = [](const Merged<A, B>& m) -> std::optional<B> {
    if (m.is_b()) return m.b();
    return std::nullopt;
  };
  return {detail::demux_side<A>(s, pick_a), detail::demux_side<B>(s, pick_b)};
}

}  // namespace abpkit::runtime

#endif  // ABPKIT_RUNTIME_MERGE_HPP_
