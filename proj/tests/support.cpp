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

#include "support.hpp"

#include <stdlib.h>

#include <fstream>
#include <sstream>

namespace mutrb::testing {

namespace fs = std::filesystem;

fs::path source_dir() { return MUTRB_SOURCE_DIR; }
fs::path corpus(const std::string& name) { return source_dir() / "corpus/sorting" / name; }
fs::path fixture(const std::string& name) { return fs::path(MUTRB_FIXTURES) / name; }

TestSuite sorting_suite(Comparator comparator) {
  return load_suite(corpus("tests"), comparator);
}

Target sorter(const std::string& name) { return load_hermetic_target(corpus(name + ".mini")); }

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
  std::istringstream in(read_text(path));
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> row;
    std::istringstream fields(line);
    std::string f;
    while (std::getline(fields, f, ',')) row.push_back(f);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<MutantRecord> read_records(const fs::path& path) {
  std::vector<MutantRecord> out;
  for (const auto& row : read_csv(path)) {
    out.push_back(MutantRecord{parse_mutation_kind(row.at(0)), row.at(1) == "1"});
  }
  return out;
}

TempDir::TempDir() {
  std::string templ = (fs::temp_directory_path() / "mutrb-test-XXXXXX").string();
  if (!mkdtemp(templ.data())) throw Error("mkdtemp failed");
  path_ = templ;
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

}  // namespace mutrb::testing
