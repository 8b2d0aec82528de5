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

// Test tables and scenarios under data/, compiled into the library so the
// test command needs no files at run time. Sorted by name.

#ifndef ABPKIT_TESTKIT_BUNDLED_HPP_
#define ABPKIT_TESTKIT_BUNDLED_HPP_

#include <string_view>
#include <vector>

namespace abpkit::testkit {

struct BundledFile {
  std::string_view name;
  std::string_view text;
};

const std::vector<BundledFile>& bundled_tables();
const std::vector<BundledFile>& bundled_scenarios();

}  // namespace abpkit::testkit

#endif  // ABPKIT_TESTKIT_BUNDLED_HPP_
