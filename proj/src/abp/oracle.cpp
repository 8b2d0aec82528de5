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

#include "abpkit/abp/oracle.hpp"

#include <algorithm>
#include <sstream>

#include "abpkit/errors.hpp"
#include "abpkit/show.hpp"

namespace abpkit::abp {
namespace {

// Uniform double in [0, 1) from the top 53 bits; identical on every platform,
// unlike std::uniform_real_distribution.
double unit_interval(std::mt19937_64& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

}  // namespace

OracleStream::OracleStream(Kind kind, std::vector<bool> bits, double drop, std::uint64_t seed)
    : kind_(kind),
      bits_(std::make_shared<const std::vector<bool>>(std::move(bits))),
      drop_(drop),
      seed_(seed) {}

OracleStream OracleStream::explicit_bits(std::vector<bool> bits) {
  return OracleStream(Kind::kExplicit, std::move(bits), 0.0, 0);
}

OracleStream OracleStream::cyclic(std::vector<bool> bits) {
  if (std::find(bits.begin(), bits.end(), true) == bits.end()) {
    throw UsageError("cyclic oracle must contain at least one pass bit");
  }
  return OracleStream(Kind::kCyclic, std::move(bits), 0.0, 0);
}

OracleStream OracleStream::bernoulli(double drop_probability, std::uint64_t seed) {
  if (!(drop_probability >= 0.0 && drop_probability < 1.0)) {
    throw UsageError("bernoulli oracle drop probability must be in [0, 1), got " +
                     std::to_string(drop_probability));
  }
  return OracleStream(Kind::kBernoulli, {}, drop_probability, seed);
}

std::optional<std::string> OracleStream::fairness_warning(
    std::optional<std::size_t> horizon) const {
  if (kind_ != Kind::kExplicit) return std::nullopt;
  const auto& b = *bits_;
  const std::size_t window = horizon ? std::min(*horizon, b.size()) : b.size();
  if (window == 0) return "explicit oracle has no predictions";
  if (!b[window - 1]) {
    std::size_t run = 0;
    while (run < window && !b[window - 1 - run]) ++run;
    return "explicit oracle ends with " + std::to_string(run) +
           (run == window ? " drop(s) and never passes" : " drop(s)");
  }
  return std::nullopt;
}

OracleCursor OracleStream::open() const { return OracleCursor(*this); }

bool operator==(const OracleStream& a, const OracleStream& b) {
  return a.kind_ == b.kind_ && *a.bits_ == *b.bits_ && a.drop_ == b.drop_ &&
         a.seed_ == b.seed_;
}

std::ostream& operator<<(std::ostream& os, const OracleStream& o) {
  switch (o.kind()) {
    case OracleStream::Kind::kExplicit:
      show(os, o.bits());
      break;
    case OracleStream::Kind::kCyclic:
      os << "Cyclic(";
      show(os, o.bits());
      os << ')';
      break;
    case OracleStream::Kind::kBernoulli:
      os << "Bernoulli(" << o.drop_probability() << ',' << o.seed() << ')';
      break;
  }
  return os;
}

OracleCursor::OracleCursor(OracleStream oracle)
    : oracle_(std::move(oracle)), engine_(oracle_.seed()) {}

bool OracleCursor::exhausted() const noexcept {
  return oracle_.kind() == OracleStream::Kind::kExplicit && consumed_ >= oracle_.bits().size();
}

bool OracleCursor::peek() const {
  OracleCursor copy = *this;
  return copy.next();
}

bool OracleCursor::next() {
  const auto& bits = oracle_.bits();
  bool pass = false;
  switch (oracle_.kind()) {
    case OracleStream::Kind::kExplicit:
      if (consumed_ >= bits.size()) {
        throw OracleExhausted("OracleExhausted: explicit oracle of length " +
                              std::to_string(bits.size()) + " has no prediction left");
      }
      pass = bits[consumed_];
      break;
    case OracleStream::Kind::kCyclic:
      pass = bits[consumed_ % bits.size()];
      break;
    case OracleStream::Kind::kBernoulli:
      pass = unit_interval(engine_) >= oracle_.drop_probability();
      break;
  }
  ++consumed_;
  return pass;
}

std::vector<bool> OracleCursor::remaining_bits() const {
  const auto& bits = oracle_.bits();
  switch (oracle_.kind()) {
    case OracleStream::Kind::kExplicit:
      return {bits.begin() + static_cast<std::ptrdiff_t>(std::min(consumed_, bits.size())),
              bits.end()};
    case OracleStream::Kind::kCyclic: {
      std::vector<bool> rotated(bits.size());
      for (std::size_t i = 0; i < bits.size(); ++i) {
        rotated[i] = bits[(consumed_ + i) % bits.size()];
      }
      return rotated;
    }
    case OracleStream::Kind::kBernoulli:
      break;
  }
  return {};
}

bool operator==(const OracleCursor& a, const OracleCursor& b) {
  using Kind = OracleStream::Kind;
  if (a.oracle_.kind() != b.oracle_.kind()) return false;
  switch (a.oracle_.kind()) {
    case Kind::kExplicit:
    case Kind::kCyclic:
      return a.remaining_bits() == b.remaining_bits();
    case Kind::kBernoulli:
      return a.oracle_ == b.oracle_ && a.consumed_ == b.consumed_;
  }
  return false;
}

std::ostream& operator<<(std::ostream& os, const OracleCursor& c) {
  switch (c.oracle().kind()) {
    case OracleStream::Kind::kExplicit:
      show(os, c.remaining_bits());
      break;
    case OracleStream::Kind::kCyclic:
      os << "Cyclic(";
      show(os, c.remaining_bits());
      os << ')';
      break;
    case OracleStream::Kind::kBernoulli:
      os << "Bernoulli(" << c.oracle().drop_probability() << ',' << c.oracle().seed() << ','
         << c.consumed() << ')';
      break;
  }
  return os;
}

}  // namespace abpkit::abp
