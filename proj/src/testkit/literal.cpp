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

#include "abpkit/testkit/literal.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

#include "abpkit/errors.hpp"

namespace abpkit::testkit {
namespace {

const char* kind_name(Value::Kind k) {
  switch (k) {
    case Value::Kind::kBool: return "bool";
    case Value::Kind::kInt: return "int";
    case Value::Kind::kList: return "list";
    case Value::Kind::kTuple: return "tuple";
    case Value::Kind::kTagged: return "tagged value";
  }
  return "?";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Value parse_document() {
    Value v = parse_value();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" +
                     std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  // Comma-separated values up to `close`; the opening bracket is consumed.
  std::vector<Value> parse_items(char close) {
    std::vector<Value> items;
    if (accept(close)) return items;
    do {
      items.push_back(parse_value());
    } while (accept(','));
    expect(close);
    return items;
  }

  Value parse_value() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '[') {
      ++pos_;
      return Value::list(parse_items(']'));
    }
    if (c == '(') {
      ++pos_;
      auto items = parse_items(')');
      if (items.empty()) fail("empty tuple");
      if (items.size() == 1) return std::move(items.front());
      return Value::tuple(std::move(items));
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) return parse_int();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_word();
    fail(std::string("unexpected character '") + c + "'");
  }

  Value parse_int() {
    const std::size_t start = pos_;
    if (text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_) {
      pos_ = start;
      fail("malformed integer");
    }
    return Value::integer(value);
  }

  Value parse_word() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    std::string word(text_.substr(start, pos_ - start));
    if (word == "true") return Value::boolean(true);
    if (word == "false") return Value::boolean(false);
    if (accept('(')) return Value::tagged(std::move(word), parse_items(')'));
    return Value::tagged(std::move(word));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void write(std::ostream& os, const Value& v);

void write_items(std::ostream& os, const std::vector<Value>& items) {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) os << ',';
    write(os, items[i]);
  }
}

void write(std::ostream& os, const Value& v) {
  switch (v.kind()) {
    case Value::Kind::kBool: os << (v.as_bool() ? "true" : "false"); break;
    case Value::Kind::kInt: os << v.as_int(); break;
    case Value::Kind::kList:
      os << '[';
      write_items(os, v.as_list());
      os << ']';
      break;
    case Value::Kind::kTuple:
      os << '(';
      write_items(os, v.as_tuple());
      os << ')';
      break;
    case Value::Kind::kTagged:
      os << v.tag();
      if (!v.args().empty()) {
        os << '(';
        write_items(os, v.args());
        os << ')';
      }
      break;
  }
}

}  // namespace

Value Value::boolean(bool b) {
  Value v;
  v.kind_ = Kind::kBool;
  v.bool_ = b;
  return v;
}

Value Value::integer(std::int64_t i) {
  Value v;
  v.kind_ = Kind::kInt;
  v.int_ = i;
  return v;
}

Value Value::list(std::vector<Value> items) {
  Value v;
  v.kind_ = Kind::kList;
  v.items_ = std::move(items);
  return v;
}

Value Value::tuple(std::vector<Value> items) {
  Value v;
  v.kind_ = Kind::kTuple;
  v.items_ = std::move(items);
  return v;
}

Value Value::tagged(std::string tag, std::vector<Value> args) {
  Value v;
  v.kind_ = Kind::kTagged;
  v.tag_ = std::move(tag);
  v.items_ = std::move(args);
  return v;
}

namespace {

[[noreturn]] void kind_mismatch(const Value& v, Value::Kind want) {
  throw ParseError(std::string("expected ") + kind_name(want) + ", got '" + to_string(v) + "'");
}

}  // namespace

bool Value::as_bool() const {
  if (kind_ != Kind::kBool) kind_mismatch(*this, Kind::kBool);
  return bool_;
}

std::int64_t Value::as_int() const {
  if (kind_ != Kind::kInt) kind_mismatch(*this, Kind::kInt);
  return int_;
}

const std::vector<Value>& Value::as_list() const {
  if (kind_ != Kind::kList) kind_mismatch(*this, Kind::kList);
  return items_;
}

const std::vector<Value>& Value::as_tuple() const {
  if (kind_ != Kind::kTuple) kind_mismatch(*this, Kind::kTuple);
  return items_;
}

const std::string& Value::tag() const {
  if (kind_ != Kind::kTagged) kind_mismatch(*this, Kind::kTagged);
  return tag_;
}

const std::vector<Value>& Value::args() const {
  if (kind_ != Kind::kTagged) kind_mismatch(*this, Kind::kTagged);
  return items_;
}

Value parse_literal(std::string_view text) { return Parser(text).parse_document(); }

std::string to_string(const Value& v) {
  std::ostringstream os;
  write(os, v);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Value& v) {
  write(os, v);
  return os;
}

}  // namespace abpkit::testkit
