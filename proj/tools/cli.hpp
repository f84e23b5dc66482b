// Copyright 2026 The stabchan Authors
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

#ifndef STABCHAN_TOOLS_CLI_HPP_
#define STABCHAN_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace stabchan::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kInvalidInput = 2;
inline constexpr int kNumericalFailure = 3;

inline constexpr const char* kSchema = "stabchan/1";

// Runs one subcommand. `args` excludes the program name. The JSON report goes
// to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace stabchan::cli

#endif  // STABCHAN_TOOLS_CLI_HPP_
