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

// Reference checks over ABP runs, independent of the model code.

#ifndef ABPKIT_TESTS_ABP_ORACLES_HPP_
#define ABPKIT_TESTS_ABP_ORACLES_HPP_

#include <cstddef>
#include <random>
#include <string_view>
#include <vector>

#include "abpkit/abp/system.hpp"

namespace abpkit::test {

// Order-preserving embedding check by a greedy scan.
template <class T>
bool is_subsequence(const std::vector<T>& sub, const std::vector<T>& seq) {
  std::size_t j = 0;
  for (const auto& x : seq) {
    if (j < sub.size() && sub[j] == x) ++j;
  }
  return j == sub.size();
}

// Per-message fold of a pass/drop bit sequence over the inputs.
template <class T>
std::vector<T> medium_reference(const std::vector<bool>& bits, const std::vector<T>& inputs) {
  std::vector<T> out;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    if (bits[k]) out.push_back(inputs[k]);
  }
  return out;
}

// Messages on the ds wire, in order.
inline std::vector<abp::SignedMsg<abp::Payload>> data_sent(const abp::AbpRun& run) {
  std::vector<abp::SignedMsg<abp::Payload>> out;
  for (const auto& slot : run.wire(abp::wires::kDataSent).slots) {
    for (const auto& v : slot) out.push_back(v.signed_msg());
  }
  return out;
}

// A ds message is a first transmission when its bit differs from the
// previous ds message; resends repeat the bit.
inline std::vector<abp::SignedMsg<abp::Payload>> first_transmissions(const abp::AbpRun& run) {
  std::vector<abp::SignedMsg<abp::Payload>> out;
  for (const auto& m : data_sent(run)) {
    if (out.empty() || out.back().bit != m.bit) out.push_back(m);
  }
  return out;
}

inline std::vector<abp::Payload> payloads_on(const abp::AbpRun& run, std::string_view wire) {
  std::vector<abp::Payload> out;
  for (const auto& slot : run.wire(wire).slots) {
    for (const auto& v : slot) out.push_back(v.payload());
  }
  return out;
}

}  // namespace abpkit::test

#endif  // ABPKIT_TESTS_ABP_ORACLES_HPP_
