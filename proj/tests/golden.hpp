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

#ifndef STABCHAN_TESTS_GOLDEN_HPP_
#define STABCHAN_TESTS_GOLDEN_HPP_

#include <string>
#include <vector>

#include "json.hpp"

namespace stabchan::testing {

// One CLI invocation checked against files under tests/golden/expected.
// In args, "{in}" expands to the inputs directory and "{tmp}" to a scratch
// directory private to the case. Files listed in `outputs` are written by the
// command into {tmp} and compared against expected/<name>.<file>.
struct GoldenCase {
  std::string name;
  std::vector<std::string> args;
  int exit_code;
  std::vector<std::string> outputs = {};
  double tol = 1e-12;
};

const std::vector<GoldenCase>& golden_cases();

struct GoldenResult {
  bool ok;
  std::string detail;
};

// Runs the case in-process. With STABCHAN_UPDATE_GOLDEN=1 in the environment
// the expected files are rewritten instead of compared. Cases exiting 2 or 3
// are checked for exit code and an error report only.
GoldenResult run_golden(const GoldenCase& c);

// Tolerant structural comparison: numbers within tol, everything else exact.
bool json_close(const nlohmann::json& a, const nlohmann::json& b, double tol,
                std::string* where);

}  // namespace stabchan::testing

#endif  // STABCHAN_TESTS_GOLDEN_HPP_
