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

#ifndef MUTRB_TESTS_SUPPORT_HPP_
#define MUTRB_TESTS_SUPPORT_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "mutrb/experiments.hpp"

namespace mutrb::testing {

std::filesystem::path source_dir();
std::filesystem::path corpus(const std::string& name);  // corpus/sorting/<name>
std::filesystem::path fixture(const std::string& name);
TestSuite sorting_suite(Comparator comparator = Comparator::Exact);
Target sorter(const std::string& name);  // "bubble" -> corpus/sorting/bubble.mini

std::string read_text(const std::filesystem::path& path);
/// Rows of a CSV file without its header, split on commas.
std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path);
std::vector<MutantRecord> read_records(const std::filesystem::path& path);

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace mutrb::testing

#endif  // MUTRB_TESTS_SUPPORT_HPP_
