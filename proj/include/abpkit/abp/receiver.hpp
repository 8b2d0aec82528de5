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

#ifndef ABPKIT_ABP_RECEIVER_HPP_
#define ABPKIT_ABP_RECEIVER_HPP_

#include <utility>
#include <vector>

#include "abpkit/abp/types.hpp"
#include "abpkit/runtime/delta.hpp"
#include "abpkit/runtime/merge.hpp"
#include "abpkit/stream/timed_stream.hpp"

namespace abpkit::abp {

template <class P>
struct ReceiverStep {
  ReceiverState state;
  std::vector<Bit> acks;
  std::vector<P> data;

  friend bool operator==(const ReceiverStep&, const ReceiverStep&) = default;
};

// The received bit is always acknowledged. Data is delivered only when the
// bit is the expected one, which then flips.
template <class P>
ReceiverStep<P> receiver_step(const ReceiverState& s, const SignedMsg<P>& m) {
  if (m.bit == s.expected) return {ReceiverState{!s.expected}, {m.bit}, {m.payload}};
  return {s, {m.bit}, {}};
}

// receiver_step with both output channels on one tagged sequence, acks
// before data.
template <class P>
runtime::Delta<ReceiverState, SignedMsg<P>, ReceiverOut<P>> receiver_delta() {
  return [](const ReceiverState& s, const SignedMsg<P>& m)
             -> runtime::Step<ReceiverState, ReceiverOut<P>> {
    auto r = receiver_step<P>(s, m);
    std::vector<ReceiverOut<P>> outs;
    for (Bit b : r.acks) outs.push_back(ReceiverOut<P>::from_a(b));
    for (const auto& d : r.data) outs.push_back(ReceiverOut<P>::from_b(d));
    return {r.state, std::move(outs)};
  };
}

template <class P>
runtime::Delta<ReceiverState, stream::Ticked<SignedMsg<P>>, stream::Ticked<ReceiverOut<P>>>
timed_receiver_delta() {
  return runtime::lift_timed<ReceiverState, SignedMsg<P>, ReceiverOut<P>>(receiver_delta<P>());
}

// (acks, data)
template <class P>
std::pair<stream::TimedStream<Bit>, stream::TimedStream<P>> receiver_component(
    const stream::TimedStream<SignedMsg<P>>& input, Bit initial_expected = true) {
  return runtime::demux_timed(runtime::exec_machine(ReceiverState{initial_expected},
                                                    timed_receiver_delta<P>(), input));
}

}  // namespace abpkit::abp

#endif  // ABPKIT_ABP_RECEIVER_HPP_
