// Copyright 2026 The mutrb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MUTRB_SUITE_HPP_
#define MUTRB_SUITE_HPP_

#include <string>
#include <string_view>
#include <vector>

namespace mutrb {

enum class Comparator { Exact, WhitespaceInsensitive, CrashOnly };

std::string_view to_string(Comparator comparator);
/// Accepts "exact", "whitespace", "crash-only". Throws Error otherwise.
Comparator parse_comparator(std::string_view name);

struct TestCase {
  std::string name;
  /// Whitespace-separated integer tokens for hermetic targets; a shell command
  /// template for external ones.
  std::string input;
  std::string expected_output;
  int weight = 1;
};

struct TestSuite {
  std::vector<TestCase> cases;
  Comparator comparator = Comparator::Exact;
};

}  // namespace mutrb

#endif  // MUTRB_SUITE_HPP_
