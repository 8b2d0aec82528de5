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

#ifndef ABPKIT_ERRORS_HPP_
#define ABPKIT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace abpkit {

// Misuse of an API: violated precondition, malformed configuration.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// headOf/tailOf on an empty sequence.
class EmptyStream : public UsageError {
 public:
  EmptyStream() : UsageError("EmptyStream: operation requires a non-empty stream") {}
};

// Literal or document that does not parse. `field` names the offending
// location when it is known.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what, std::string field = {})
      : std::runtime_error(field.empty() ? what : field + ": " + what),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Base for failures raised while a model executes. These describe a defect
// in a model or in its inputs, as opposed to a usage error of the library.
class ModelFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A delta function has no clause for the (state, input) pair in the message.
class ModelError : public ModelFailure {
 public:
  using ModelFailure::ModelFailure;
};

// SetTimer with an argument other than -1 or a positive slot count.
class InvalidTimerValue : public ModelFailure {
 public:
  explicit InvalidTimerValue(int value)
      : ModelFailure("InvalidTimerValue: SetTimer(" + std::to_string(value) +
                     ")"),
        value_(value) {}

  int value() const noexcept { return value_; }

 private:
  int value_;
};

// A scheduling round of the network made no progress.
class DeadlockDetected : public ModelFailure {
 public:
  using ModelFailure::ModelFailure;
};

// An explicit finite oracle ran out of predictions.
class OracleExhausted : public ModelFailure {
 public:
  using ModelFailure::ModelFailure;
};

}  // namespace abpkit

#endif  // ABPKIT_ERRORS_HPP_
