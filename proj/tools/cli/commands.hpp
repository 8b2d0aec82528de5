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

// The abpkit command line. Exit codes: 0 success, 1 test or model failure,
// 2 usage or parse error.

#ifndef ABPKIT_TOOLS_CLI_COMMANDS_HPP_
#define ABPKIT_TOOLS_CLI_COMMANDS_HPP_

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace abpkit::cli {

inline constexpr std::string_view kToolName = "abpkit";
inline constexpr std::string_view kVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct Terminal {
  bool color = false;
};

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Terminal& term = {});

std::uint64_t fnv1a64(std::string_view data);

}  // namespace abpkit::cli

#endif  // ABPKIT_TOOLS_CLI_COMMANDS_HPP_
