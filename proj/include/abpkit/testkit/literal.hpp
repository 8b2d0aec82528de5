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

// The literal grammar of test tables and traces:
//
//   value   := bool | int | list | tuple | tagged
//   bool    := "true" | "false"
//   int     := ["-"] digit+
//   list    := "[" [value ("," value)*] "]"
//   tuple   := "(" value ("," value)+ ")"        ; "(v)" is just v
//   tagged  := Ident ["(" [value ("," value)*] ")"]
//
// Whitespace between tokens is ignored.

#ifndef ABPKIT_TESTKIT_LITERAL_HPP_
#define ABPKIT_TESTKIT_LITERAL_HPP_

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace abpkit::testkit {

class Value {
 public:
  enum class Kind { kBool, kInt, kList, kTuple, kTagged };

  static Value boolean(bool b);
  static Value integer(std::int64_t i);
  static Value list(std::vector<Value> items);
  static Value tuple(std::vector<Value> items);
  static Value tagged(std::string tag, std::vector<Value> args = {});

  Kind kind() const noexcept { return kind_; }
  bool is(Kind k) const noexcept { return kind_ == k; }
  bool is_tag(std::string_view tag) const noexcept {
    return kind_ == Kind::kTagged && tag_ == tag;
  }

  // Accessors raise ParseError naming the expected kind on mismatch.
  bool as_bool() const;
  std::int64_t as_int() const;
  const std::vector<Value>& as_list() const;
  const std::vector<Value>& as_tuple() const;
  const std::string& tag() const;
  const std::vector<Value>& args() const;

  friend bool operator==(const Value&, const Value&) = default;

 private:
  Kind kind_ = Kind::kInt;
  bool bool_ = false;
  std::int64_t int_ = 0;
  std::string tag_;
  std::vector<Value> items_;
};

// Throws ParseError with the character offset of the problem.
Value parse_literal(std::string_view text);

std::string to_string(const Value& v);
std::ostream& operator<<(std::ostream& os, const Value& v);

}  // namespace abpkit::testkit

#endif  // ABPKIT_TESTKIT_LITERAL_HPP_
