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

#ifndef ABPKIT_ABP_SENDER_HPP_
#define ABPKIT_ABP_SENDER_HPP_

#include <utility>
#include <vector>

#include "abpkit/abp/types.hpp"
#include "abpkit/runtime/delta.hpp"
#include "abpkit/runtime/merge.hpp"
#include "abpkit/runtime/timer.hpp"
#include "abpkit/stream/timed_stream.hpp"

namespace abpkit::abp {

// The sender's untimed transition function. Eight clauses:
//   1. empty buffer,     payload i        -> buffer [i], send (b,i), arm timer
//   2. non-empty buffer, payload i        -> append i
//   3. empty buffer,     any ack          -> no change
//   4. non-empty buffer, ack != b         -> no change
//   5. buffer [x],       ack == b         -> flip b, empty buffer, disable timer
//   6. buffer x:y:rest,  ack == b         -> flip b, drop x, send (!b,y), arm timer
//   7. empty buffer,     timeout          -> no change
//   8. non-empty buffer, timeout          -> resend (b,x), arm timer
template <class P>
runtime::Step<SenderState<P>, SenderOut<P>> sender_step(const SenderState<P>& s,
                                                        const SenderIn<P>& in,
                                                        int timeout = kDefaultTimeout) {
  using Out = SenderOut<P>;
  const bool empty = s.buffer.empty();

  if (in.is_timeout()) {
    if (empty) return {s, {}};
    return {s, {Out::msg({s.bit, s.buffer.front()}), Out::set_timer(timeout)}};
  }

  const auto& m = in.payload();
  if (m.is_a()) {
    SenderState<P> next = s;
    next.buffer.push_back(m.a());
    if (empty) return {std::move(next), {Out::msg({s.bit, m.a()}), Out::set_timer(timeout)}};
    return {std::move(next), {}};
  }

  const Bit ack = m.b();
  if (empty || ack != s.bit) return {s, {}};
  SenderState<P> next{!s.bit, std::vector<P>(s.buffer.begin() + 1, s.buffer.end())};
  if (next.buffer.empty()) return {std::move(next), {Out::set_timer(runtime::kTimerDisabled)}};
  const P head = next.buffer.front();
  return {std::move(next), {Out::msg({!s.bit, head}), Out::set_timer(timeout)}};
}

template <class P>
runtime::Delta<SenderState<P>, SenderIn<P>, SenderOut<P>> sender_delta(
    int timeout = kDefaultTimeout) {
  return [timeout](const SenderState<P>& s, const SenderIn<P>& in) {
    return sender_step<P>(s, in, timeout);
  };
}

template <class P>
using TimedSenderState = runtime::TimerState<SenderState<P>>;

// The sender with its timer attached, over the merged input/ack channel.
template <class P>
runtime::Delta<TimedSenderState<P>, stream::Ticked<runtime::Merged<P, Bit>>,
               stream::Ticked<SignedMsg<P>>>
timed_sender_delta(int timeout = kDefaultTimeout) {
  return runtime::attach_timer<SenderState<P>, runtime::Merged<P, Bit>, SignedMsg<P>>(
      sender_delta<P>(timeout));
}

template <class P>
TimedSenderState<P> sender_start(Bit initial_bit = true) {
  return {SenderState<P>{initial_bit, {}}, runtime::kTimerDisabled};
}

struct SenderConfig {
  int timeout = kDefaultTimeout;
  Bit initial_bit = true;
};

template <class P>
stream::TimedStream<SignedMsg<P>> sender_component(const stream::TimedStream<P>& input,
                                                   const stream::TimedStream<Bit>& acks,
                                                   SenderConfig config = {}) {
  return runtime::exec_machine(sender_start<P>(config.initial_bit),
                               timed_sender_delta<P>(config.timeout),
                               runtime::merge_timed(input, acks));
}

}  // namespace abpkit::abp

#endif  // ABPKIT_ABP_SENDER_HPP_
