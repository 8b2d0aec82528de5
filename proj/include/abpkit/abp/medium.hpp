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

#ifndef ABPKIT_ABP_MEDIUM_HPP_
#define ABPKIT_ABP_MEDIUM_HPP_

#include "abpkit/abp/oracle.hpp"
#include "abpkit/runtime/delta.hpp"
#include "abpkit/stream/timed_stream.hpp"

namespace abpkit::abp {

using MediumState = OracleCursor;

// One oracle bit per message: pass forwards the message unchanged, drop
// loses it.
template <class P>
runtime::Step<MediumState, P> medium_step(const MediumState& s, const P& m) {
  MediumState next = s;
  if (next.next()) return {std::move(next), {m}};
  return {std::move(next), {}};
}

template <class P>
runtime::Delta<MediumState, P, P> medium_delta() {
  return [](const MediumState& s, const P& m) { return medium_step<P>(s, m); };
}

template <class P>
runtime::Delta<MediumState, stream::Ticked<P>, stream::Ticked<P>> timed_medium_delta() {
  return runtime::lift_timed<MediumState, P, P>(medium_delta<P>());
}

template <class P>
stream::TimedStream<P> medium_component(const OracleStream& oracle,
                                        const stream::TimedStream<P>& input) {
  return runtime::exec_machine(oracle.open(), timed_medium_delta<P>(), input);
}

}  // namespace abpkit::abp

#endif  // ABPKIT_ABP_MEDIUM_HPP_
