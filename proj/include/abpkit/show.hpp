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

// Rendering of values in the literal grammar used by traces and test tables:
// `true`/`false`, integers, `[a,b]` sequences, `(a,b)` tuples and `Tag(args)`.

#ifndef ABPKIT_SHOW_HPP_
#define ABPKIT_SHOW_HPP_

#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

namespace abpkit {

template <class T>
void show(std::ostream& os, const T& x);
template <class T>
void show(std::ostream& os, const std::vector<T>& v);

template <class T>
void show(std::ostream& os, const T& x) {
  if constexpr (std::is_same_v<T, bool>) {
    os << (x ? "true" : "false");
  } else if constexpr (requires { os << x; }) {
    os << x;
  } else {
    os << "<?>";
  }
}

template <class T>
void show(std::ostream& os, const std::vector<T>& v) {
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    show(os, v[i]);
  }
  os << ']';
}

// How `x` appears as the argument list of a tagged literal. Tuple-like types
// overload this to print their fields unparenthesized, so that a tagged
// tuple renders as `MsgO(true,3)` rather than `MsgO((true,3))`.
template <class T>
void show_args(std::ostream& os, const T& x) {
  show(os, x);
}

template <class T>
std::string show_string(const T& x) {
  std::ostringstream os;
  show(os, x);
  return os.str();
}

}  // namespace abpkit

#endif  // ABPKIT_SHOW_HPP_
