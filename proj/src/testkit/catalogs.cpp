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

#include "abpkit/testkit/catalogs.hpp"

namespace abpkit::testkit {
namespace {

using abp::Payload;
using SState = abp::SenderState<Payload>;
using SIn = abp::SenderIn<Payload>;

bool is_payload(const SIn& i) { return !i.is_timeout() && i.payload().is_a(); }
bool is_ack(const SIn& i) { return !i.is_timeout() && i.payload().is_b(); }
bool is_timeout(const SIn& i) { return i.is_timeout(); }
bool ack_matches(const SState& s, const SIn& i) { return i.payload().b() == s.bit; }

SenderCatalog build_sender() {
  SenderCatalog c("sender");
  c.state_class("emptyBuffer", [](const SState& s) { return s.buffer.empty(); })
      .state_class("nonEmptyBuffer", [](const SState& s) { return !s.buffer.empty(); });
  c.transition("t1", "ack on empty buffer is ignored", "emptyBuffer", "emptyBuffer", is_ack)
      .transition("t2", "payload into empty buffer is sent", "emptyBuffer", "nonEmptyBuffer",
                  is_payload)
      .transition("t3", "payload into non-empty buffer is queued", "nonEmptyBuffer",
                  "nonEmptyBuffer", is_payload)
      .transition("t4", "matching ack sends the next item", "nonEmptyBuffer", "nonEmptyBuffer",
                  is_ack,
                  [](const SState& s, const SIn& i) {
                    return ack_matches(s, i) && s.buffer.size() >= 2;
                  })
      .transition("t5", "matching ack on the last item stops the timer", "nonEmptyBuffer",
                  "emptyBuffer", is_ack,
                  [](const SState& s, const SIn& i) {
                    return ack_matches(s, i) && s.buffer.size() == 1;
                  })
      .transition("t6", "mismatching ack is ignored", "nonEmptyBuffer", "nonEmptyBuffer", is_ack,
                  [](const SState& s, const SIn& i) { return !ack_matches(s, i); })
      .transition("t7", "timeout resends the head", "nonEmptyBuffer", "nonEmptyBuffer",
                  is_timeout)
      .transition("t8", "timeout on empty buffer is ignored", "emptyBuffer", "emptyBuffer",
                  is_timeout);
  return c;
}

using TIn = stream::Ticked<Payload>;

bool will_pass(const abp::MediumState& s) { return !s.exhausted() && s.peek(); }

MediumCatalog build_medium() {
  MediumCatalog c("medium");
  c.state_class("any", [](const abp::MediumState&) { return true; });
  c.transition("m-pass", "message passes", "any", "any", [](const TIn& i) { return i.is_msg(); },
               [](const abp::MediumState& s, const TIn&) { return will_pass(s); })
      .transition("m-drop", "message is dropped", "any", "any",
                  [](const TIn& i) { return i.is_msg(); },
                  [](const abp::MediumState& s, const TIn&) {
                    return !s.exhausted() && !s.peek();
                  })
      .transition("m-tick", "tick passes without consuming the oracle", "any", "any",
                  [](const TIn& i) { return i.is_tick(); });
  return c;
}

using RMsg = abp::SignedMsg<Payload>;

ReceiverCatalog build_receiver() {
  ReceiverCatalog c("receiver");
  c.state_class("expectTrue", [](const abp::ReceiverState& s) { return s.expected; })
      .state_class("expectFalse", [](const abp::ReceiverState& s) { return !s.expected; });
  c.transition("r-match-true", "expected bit true delivers", "expectTrue", "expectFalse",
               [](const RMsg& m) { return m.bit; })
      .transition("r-mismatch-true", "stale bit false is acked only", "expectTrue", "expectTrue",
                  [](const RMsg& m) { return !m.bit; })
      .transition("r-match-false", "expected bit false delivers", "expectFalse", "expectTrue",
                  [](const RMsg& m) { return !m.bit; })
      .transition("r-mismatch-false", "stale bit true is acked only", "expectFalse",
                  "expectFalse", [](const RMsg& m) { return m.bit; });
  return c;
}

}  // namespace

const SenderCatalog& sender_catalog() {
  static const SenderCatalog c = build_sender();
  return c;
}

const MediumCatalog& medium_catalog() {
  static const MediumCatalog c = build_medium();
  return c;
}

const ReceiverCatalog& receiver_catalog() {
  static const ReceiverCatalog c = build_receiver();
  return c;
}

}  // namespace abpkit::testkit
