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

#include "abpkit/abp/system.hpp"

#include <map>
#include <string>
#include <vector>

#include "abpkit/abp/medium.hpp"
#include "abpkit/abp/receiver.hpp"
#include "abpkit/abp/sender.hpp"
#include "abpkit/errors.hpp"
#include "abpkit/show.hpp"

namespace abpkit::abp {

Payload WireValue::payload() const {
  if (const auto* p = std::get_if<0>(&v_)) return *p;
  throw ModelError("wire value " + show_string(*this) + " is not a payload");
}

Bit WireValue::bit() const {
  if (const auto* b = std::get_if<1>(&v_)) return *b;
  throw ModelError("wire value " + show_string(*this) + " is not a bit");
}

const SignedMsg<Payload>& WireValue::signed_msg() const {
  if (const auto* m = std::get_if<2>(&v_)) return *m;
  throw ModelError("wire value " + show_string(*this) + " is not a signed message");
}

std::ostream& operator<<(std::ostream& os, const WireValue& w) {
  std::visit([&os](const auto& x) { show(os, x); }, w.v_);
  return os;
}

namespace {

using runtime::Merged;
using runtime::PortRef;
using Slots = std::vector<std::vector<WireValue>>;

using SenderProcess =
    runtime::MachineProcess<WireValue, TimedSenderState<Payload>, Merged<Payload, Bit>,
                            SignedMsg<Payload>>;
using MediumProcess = runtime::MachineProcess<WireValue, MediumState, WireValue, WireValue>;
using ReceiverProcess = runtime::MachineProcess<WireValue, ReceiverState, SignedMsg<Payload>,
                                                ReceiverOut<Payload>>;

runtime::ProcessFactory<WireValue> sender_process(const AbpConfig& config) {
  SenderProcess::Gather gather = [](const Slots& in) {
    std::vector<Payload> payloads;
    std::vector<Bit> acks;
    for (const auto& v : in[0]) payloads.push_back(v.payload());
    for (const auto& v : in[1]) acks.push_back(v.bit());
    return runtime::merge_slot(payloads, acks);
  };
  SenderProcess::Scatter scatter = [](const SignedMsg<Payload>& m, Slots& out) {
    out[0].push_back(WireValue::of_signed(m));
  };
  return runtime::machine_process<WireValue>(
      std::string("sender"), sender_start<Payload>(config.sender_initial_bit),
      timed_sender_delta<Payload>(config.timeout), 1, gather, scatter);
}

// The media are polymorphic in their payload; on the network they forward
// wire values untouched.
runtime::ProcessFactory<WireValue> medium_process(std::string name, const OracleStream& oracle) {
  MediumProcess::Gather gather = [](const Slots& in) { return in[0]; };
  MediumProcess::Scatter scatter = [](const WireValue& v, Slots& out) { out[0].push_back(v); };
  return runtime::machine_process<WireValue>(std::move(name), oracle.open(),
                                             timed_medium_delta<WireValue>(), 1, gather,
                                             scatter);
}

runtime::ProcessFactory<WireValue> receiver_process(const AbpConfig& config) {
  ReceiverProcess::Gather gather = [](const Slots& in) {
    std::vector<SignedMsg<Payload>> msgs;
    for (const auto& v : in[0]) msgs.push_back(v.signed_msg());
    return msgs;
  };
  ReceiverProcess::Scatter scatter = [](const ReceiverOut<Payload>& o, Slots& out) {
    if (o.is_a()) {
      out[0].push_back(WireValue::of_bit(o.a()));
    } else {
      out[1].push_back(WireValue::of_payload(o.b()));
    }
  };
  return runtime::machine_process<WireValue>(
      std::string("receiver"), ReceiverState{config.receiver_initial_bit},
      timed_receiver_delta<Payload>(), 2, gather, scatter);
}

stream::TimedStream<WireValue> to_wire(const stream::TimedStream<Payload>& input,
                                       std::size_t slots) {
  auto values = stream::take_slots(input, slots);
  std::vector<std::vector<WireValue>> wire_slots;
  wire_slots.reserve(slots);
  for (const auto& slot : values) {
    auto& ws = wire_slots.emplace_back();
    for (Payload p : slot) ws.push_back(WireValue::of_payload(p));
  }
  wire_slots.resize(slots);
  return stream::inject_ticks(wire_slots);
}

}  // namespace

AbpNetwork abp_network(const OracleStream& data_oracle, const OracleStream& ack_oracle,
                       const AbpConfig& config) {
  AbpNetwork net;
  net.component("sender", 2, 1, sender_process(config))
      .component("data_medium", 1, 1, medium_process("data_medium", data_oracle))
      .component("receiver", 1, 2, receiver_process(config))
      .component("ack_medium", 1, 1, medium_process("ack_medium", ack_oracle));
  net.wire(std::string(wires::kInput), std::nullopt, PortRef{"sender", 0})
      .wire(std::string(wires::kDataSent), PortRef{"sender", 0}, PortRef{"data_medium", 0})
      .wire(std::string(wires::kDataMedium), PortRef{"data_medium", 0}, PortRef{"receiver", 0})
      .wire(std::string(wires::kAckSent), PortRef{"receiver", 0}, PortRef{"ack_medium", 0})
      .wire(std::string(wires::kAckMedium), PortRef{"ack_medium", 0}, PortRef{"sender", 1},
            {stream::tick<WireValue>()})
      .wire(std::string(wires::kOutput), PortRef{"receiver", 1}, std::nullopt);
  return net;
}

AbpRun run_abp(const std::pair<OracleStream, OracleStream>& oracles,
               const stream::TimedStream<Payload>& input, std::size_t slots,
               const AbpConfig& config) {
  const auto net = abp_network(oracles.first, oracles.second, config);
  std::map<std::string, stream::TimedStream<WireValue>> external;
  external.emplace(std::string(wires::kInput), to_wire(input, slots));
  return runtime::run_network(net, external, slots);
}

stream::TimedStream<Payload> abp_compose(const std::pair<OracleStream, OracleStream>& oracles,
                                         const stream::TimedStream<Payload>& input,
                                         std::size_t slots, const AbpConfig& config) {
  const auto run = run_abp(oracles, input, slots, config);
  std::vector<std::vector<Payload>> out;
  for (const auto& slot : run.wire(wires::kOutput).slots) {
    auto& o = out.emplace_back();
    for (const auto& v : slot) o.push_back(v.payload());
  }
  return stream::inject_ticks(out);
}

}  // namespace abpkit::abp
