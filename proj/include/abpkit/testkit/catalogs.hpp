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

// Declared transition catalogs of the ABP components.
//
// Sender (untimed delta), classes emptyBuffer / nonEmptyBuffer:
//   t1 ack on empty buffer          t5 matching ack, last item
//   t2 payload into empty buffer    t6 mismatching ack
//   t3 payload into non-empty       t7 timeout, resend head
//   t4 matching ack, >= 2 items     t8 timeout on empty buffer
// Medium (timed delta), class any: m-pass, m-drop, m-tick.
// Receiver (untimed delta), classes expectTrue / expectFalse:
//   r-match-true, r-match-false, r-mismatch-true, r-mismatch-false.

#ifndef ABPKIT_TESTKIT_CATALOGS_HPP_
#define ABPKIT_TESTKIT_CATALOGS_HPP_

#include "abpkit/abp/medium.hpp"
#include "abpkit/abp/types.hpp"
#include "abpkit/stream/timed_stream.hpp"
#include "abpkit/testkit/coverage.hpp"

namespace abpkit::testkit {

using SenderCatalog = TransitionCatalog<abp::SenderState<abp::Payload>, abp::SenderIn<abp::Payload>>;
using MediumCatalog = TransitionCatalog<abp::MediumState, stream::Ticked<abp::Payload>>;
using ReceiverCatalog = TransitionCatalog<abp::ReceiverState, abp::SignedMsg<abp::Payload>>;

const SenderCatalog& sender_catalog();
const MediumCatalog& medium_catalog();
const ReceiverCatalog& receiver_catalog();

}  // namespace abpkit::testkit

#endif  // ABPKIT_TESTKIT_CATALOGS_HPP_
