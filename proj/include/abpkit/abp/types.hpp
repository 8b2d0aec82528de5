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

#ifndef ABPKIT_ABP_TYPES_HPP_
#define ABPKIT_ABP_TYPES_HPP_

#include <compare>
#include <cstdint>
#include <ostream>
#include <vector>

#include "abpkit/runtime/messages.hpp"
#include "abpkit/show.hpp"

namespace abpkit::abp {

using Bit = bool;

// Payload type of the bundled model runs and test tables.
using Payload = std::int64_t;

// Slots the sender waits for an acknowledgement before resending.
inline constexpr int kDefaultTimeout = 3;

// A payload tagged with the alternating bit.
template <class P>
struct SignedMsg {
  Bit bit = true;
  P payload{};

  friend bool operator==(const SignedMsg&, const SignedMsg&) = default;
  friend auto operator<=>(const SignedMsg&, const SignedMsg&) = default;
};

template <class P>
void show_args(std::ostream& os, const SignedMsg<P>& m) {
  show(os, m.bit);
  os << ',';
  show(os, m.payload);
}

template <class P>
std::ostream& operator<<(std::ostream& os, const SignedMsg<P>& m) {
  os << '(';
  show_args(os, m);
  return os << ')';
}

// Bit of the message awaiting acknowledgement and the pending payloads. The
// head of a non-empty buffer is the message in flight.
template <class P>
struct SenderState {
  Bit bit = true;
  std::vector<P> buffer;

  friend bool operator==(const SenderState&, const SenderState&) = default;
};

template <class P>
std::ostream& operator<<(std::ostream& os, const SenderState<P>& s) {
  os << '(';
  show(os, s.bit);
  os << ',';
  show(os, s.buffer);
  return os << ')';
}

// Channel A carries payloads from the input, channel B acknowledgement bits.
template <class P>
using SenderIn = runtime::TimerIn<runtime::Merged<P, Bit>>;

template <class P>
using SenderOut = runtime::TimerOut<SignedMsg<P>>;

struct ReceiverState {
  Bit expected = true;

  friend bool operator==(const ReceiverState&, const ReceiverState&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const ReceiverState& s) {
  show(os, s.expected);
  return os;
}

// Receiver output encoded on one channel: A carries acknowledgement bits, B
// delivered payloads.
template <class P>
using ReceiverOut = runtime::Merged<Bit, P>;

}  // namespace abpkit::abp

#endif  // ABPKIT_ABP_TYPES_HPP_
