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

// The composed protocol: sender, data medium, receiver and ack medium, with
// a one-tick startup delay on the acknowledgement wire.
//
//   input --> sender --ds--> data medium --dm--> receiver --out-->
//               ^                                   |
//               +--am-- [Tick] ack medium <--as-----+

#ifndef ABPKIT_ABP_SYSTEM_HPP_
#define ABPKIT_ABP_SYSTEM_HPP_

#include <cstddef>
#include <ostream>
#include <string_view>
#include <utility>
#include <variant>

#include "abpkit/abp/oracle.hpp"
#include "abpkit/abp/types.hpp"
#include "abpkit/runtime/network.hpp"
#include "abpkit/stream/timed_stream.hpp"

namespace abpkit::abp {

// A value on any wire of the composed system.
class WireValue {
 public:
  static WireValue of_payload(Payload p) { return WireValue(Storage(std::in_place_index<0>, p)); }
  static WireValue of_bit(Bit b) { return WireValue(Storage(std::in_place_index<1>, b)); }
  static WireValue of_signed(SignedMsg<Payload> m) {
    return WireValue(Storage(std::in_place_index<2>, m));
  }

  // Each accessor raises ModelError when the value has another type.
  Payload payload() const;
  Bit bit() const;
  const SignedMsg<Payload>& signed_msg() const;

  friend bool operator==(const WireValue&, const WireValue&) = default;

 private:
  using Storage = std::variant<Payload, Bit, SignedMsg<Payload>>;
  explicit WireValue(Storage v) : v_(std::move(v)) {}

  Storage v_;

  friend std::ostream& operator<<(std::ostream& os, const WireValue& w);
};

struct AbpConfig {
  int timeout = kDefaultTimeout;
  Bit sender_initial_bit = true;
  Bit receiver_initial_bit = true;

  friend bool operator==(const AbpConfig&, const AbpConfig&) = default;
};

namespace wires {
inline constexpr std::string_view kInput = "input";
inline constexpr std::string_view kDataSent = "ds";
inline constexpr std::string_view kDataMedium = "dm";
inline constexpr std::string_view kAckSent = "as";
inline constexpr std::string_view kAckMedium = "am";
inline constexpr std::string_view kOutput = "out";
}  // namespace wires

using AbpNetwork = runtime::NetworkSpec<WireValue>;
using AbpRun = runtime::NetworkRun<WireValue>;

AbpNetwork abp_network(const OracleStream& data_oracle, const OracleStream& ack_oracle,
                       const AbpConfig& config = {});

// Runs the composed system for `slots` slots. An input with fewer slots is
// padded with silent slots.
AbpRun run_abp(const std::pair<OracleStream, OracleStream>& oracles,
               const stream::TimedStream<Payload>& input, std::size_t slots,
               const AbpConfig& config = {});

// The `out` wire of run_abp.
stream::TimedStream<Payload> abp_compose(const std::pair<OracleStream, OracleStream>& oracles,
                                         const stream::TimedStream<Payload>& input,
                                         std::size_t slots, const AbpConfig& config = {});

}  // namespace abpkit::abp

#endif  // ABPKIT_ABP_SYSTEM_HPP_
