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

// Oracles: pass/drop predictions for an unreliable medium, one per message.
//
// Three finite representations stand in for the infinite oracle:
//   explicit   a finite bit list; running past its end raises OracleExhausted
//   cyclic     a bit list repeated forever; must contain a pass bit
//   bernoulli  a seeded generator that drops with probability p < 1
// `true` means pass.

#ifndef ABPKIT_ABP_ORACLE_HPP_
#define ABPKIT_ABP_ORACLE_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

namespace abpkit::abp {

class OracleCursor;

class OracleStream {
 public:
  enum class Kind { kExplicit, kCyclic, kBernoulli };

  static OracleStream explicit_bits(std::vector<bool> bits);
  // Throws UsageError unless `bits` contains at least one pass.
  static OracleStream cyclic(std::vector<bool> bits);
  // Throws UsageError unless 0 <= drop_probability < 1.
  static OracleStream bernoulli(double drop_probability, std::uint64_t seed);
  static OracleStream all_pass() { return cyclic({true}); }

  Kind kind() const noexcept { return kind_; }
  const std::vector<bool>& bits() const noexcept { return *bits_; }
  double drop_probability() const noexcept { return drop_; }
  std::uint64_t seed() const noexcept { return seed_; }

  // Fairness diagnostics. Cyclic and bernoulli oracles are fair by
  // construction. An explicit oracle is checked over the predictions usable
  // within `horizon` messages: a warning is returned when that window is
  // empty or ends in a drop, since a message resent at the end may then
  // never pass.
  std::optional<std::string> fairness_warning(std::optional<std::size_t> horizon = {}) const;

  OracleCursor open() const;

  friend bool operator==(const OracleStream& a, const OracleStream& b);

 private:
  OracleStream(Kind kind, std::vector<bool> bits, double drop, std::uint64_t seed);

  Kind kind_;
  std::shared_ptr<const std::vector<bool>> bits_;
  double drop_ = 0.0;
  std::uint64_t seed_ = 0;
};

std::ostream& operator<<(std::ostream& os, const OracleStream& o);

// Position within an oracle; the state of a medium. Copies are cheap and
// independent.
class OracleCursor {
 public:
  explicit OracleCursor(OracleStream oracle);

  // Consumes one prediction. Throws OracleExhausted at the end of an
  // explicit oracle.
  bool next();
  bool peek() const;
  bool exhausted() const noexcept;
  std::size_t consumed() const noexcept { return consumed_; }
  const OracleStream& oracle() const noexcept { return oracle_; }

  // Predictions still to come: the unconsumed suffix for explicit oracles,
  // the pattern rotated to the current phase for cyclic ones.
  std::vector<bool> remaining_bits() const;

  // Two cursors are equal when they will yield the same predictions.
  friend bool operator==(const OracleCursor& a, const OracleCursor& b);

 private:
  OracleStream oracle_;
  std::size_t consumed_ = 0;
  std::mt19937_64 engine_;
};

// Explicit: `[true,false]` (remaining bits). Cyclic: `Cyclic([...])` at the
// current phase. Bernoulli: `Bernoulli(drop,seed,consumed)`.
std::ostream& operator<<(std::ostream& os, const OracleCursor& c);

}  // namespace abpkit::abp

#endif  // ABPKIT_ABP_ORACLE_HPP_
