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

#include "mutrb/external.hpp"

#include <stdlib.h>

#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include "mutrb/error.hpp"

namespace mutrb {
namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

void replace_all(std::string& s, const std::string& from, const std::string& to) {
  for (std::size_t at = s.find(from); at != std::string::npos;
       at = s.find(from, at + to.size())) {
    s.replace(at, from.size(), to);
  }
}

bool is_listing(const fs::path& p) { return p.extension() == ".lin"; }

/// Scratch directory removed on scope exit.
class WorkDir {
 public:
  WorkDir() {
    std::string templ = (fs::temp_directory_path() / "mutrb-XXXXXX").string();
    if (!mkdtemp(templ.data())) throw Error("cannot create a work directory");
    path_ = templ;
  }
  ~WorkDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  WorkDir(const WorkDir&) = delete;
  WorkDir& operator=(const WorkDir&) = delete;
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

}  // namespace

std::string expand_template(const std::string& templ, const std::string& variant,
                            const std::string& workdir, const std::string& source_dir) {
  std::string out = templ;
  replace_all(out, "{variant}", variant);
  replace_all(out, "{workdir}", workdir);
  replace_all(out, "{source_dir}", source_dir);
  return out;
}

ExternalDescriptor load_external_descriptor(const fs::path& path) {
  std::istringstream in(read_file(path));
  ExternalDescriptor d;
  d.base_dir = fs::absolute(path).parent_path();
  std::map<std::size_t, ExternalTest> tests;
  const std::regex test_key(R"(test\[(\d+)\]\.(cmd|expected_file))");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    const std::string where = path.string() + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw ConfigError(where + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    std::smatch m;
    if (key == "source") {
      d.source = d.base_dir / value;
    } else if (key == "build_cmd") {
      d.build_cmd = value;
    } else if (key == "timeout_ms") {
      try {
        d.timeout_ms = std::stoull(value);
      } catch (const std::exception&) {
        throw ConfigError(where + ": timeout_ms must be a positive integer");
      }
      if (d.timeout_ms == 0) throw ConfigError(where + ": timeout_ms must be positive");
    } else if (key == "coverage_file") {
      d.coverage_file = d.base_dir / value;
    } else if (std::regex_match(key, m, test_key)) {
      ExternalTest& t = tests[std::stoul(m[1].str())];
      if (m[2] == "cmd") {
        t.cmd = value;
      } else {
        t.expected_file = d.base_dir / value;
      }
    } else {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
  if (d.source.empty()) throw ConfigError(path.string() + ": missing 'source'");
  if (d.coverage_file.empty()) {
    throw ConfigError(path.string() + ": missing 'coverage_file'");
  }
  if (tests.empty()) throw ConfigError(path.string() + ": no test[i] entries");
  for (auto& [i, t] : tests) {
    if (t.cmd.empty() || t.expected_file.empty()) {
      throw ConfigError(path.string() + ": test[" + std::to_string(i) +
                        "] needs both cmd and expected_file");
    }
    d.tests.push_back(std::move(t));
  }
  return d;
}

ExternalEvaluator::ExternalEvaluator(ExternalDescriptor descriptor)
    : descriptor_(std::move(descriptor)) {}

Verdict ExternalEvaluator::evaluate(const Genome& genome, const TestSuite& suite) const {
  Verdict v;
  if (const auto* tree = std::get_if<TreeGenome>(&genome); tree && !well_formed(*tree)) {
    v.outcome = Outcome::Invalid;
    return v;
  }
  const WorkDir work;
  const fs::path file =
      work.path() / (std::holds_alternative<LinearGenome>(genome) ? "variant.lin"
                                                                  : "variant.mini");
  {
    std::ofstream out(file, std::ios::binary);
    out << serialize(genome);
    if (!out) throw Error("cannot write " + file.string());
  }
  const std::string src = descriptor_.source.parent_path().string();
  const auto expand = [&](const std::string& t) {
    return expand_template(t, file.string(), work.path().string(), src);
  };
  if (!descriptor_.build_cmd.empty()) {
    const ProcessResult b =
        run_process(expand(descriptor_.build_cmd), work.path(), descriptor_.timeout_ms);
    if (b.timed_out || b.signal || b.exit_code != 0) {
      v.outcome = Outcome::Invalid;
      v.first_failure = "build";
      return v;
    }
  }
  for (const TestCase& c : suite.cases) {
    ++v.cases_run;
    const ProcessResult r = run_process(expand(c.input), work.path(), descriptor_.timeout_ms);
    if (r.timed_out) {
      v.outcome = Outcome::Timeout;
    } else if (r.signal) {
      v.outcome = Outcome::Crashed;
    } else if (r.exit_code != 0 ||
               !compare_output(r.output, c.expected_output, suite.comparator)) {
      v.outcome = Outcome::TestFailed;
    }
    if (!v.neutral()) {
      v.first_failure = c.name;
      return v;
    }
  }
  return v;
}

CoverageMap ExternalEvaluator::coverage(const Genome& genome, const TestSuite&) const {
  std::istringstream in(read_file(descriptor_.coverage_file));
  std::map<SiteId, std::uint64_t> recorded;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    SiteId id = 0;
    std::uint64_t count = 0;
    if (!(fields >> id >> count)) {
      throw CoverageError(descriptor_.coverage_file.string() + ": malformed line '" +
                          line + "'");
    }
    recorded[id] += count;
  }
  CoverageMap map;
  for (const Site& s : sites_of(genome)) {
    const auto it = recorded.find(s.id);
    map.counts[s.id] = it == recorded.end() ? 0 : it->second;
  }
  return map;
}

TestSuite external_suite(const ExternalDescriptor& descriptor, Comparator comparator) {
  TestSuite suite;
  suite.comparator = comparator;
  for (std::size_t i = 0; i < descriptor.tests.size(); ++i) {
    const ExternalTest& t = descriptor.tests[i];
    suite.cases.push_back(
        TestCase{"test[" + std::to_string(i) + "]", t.cmd, read_file(t.expected_file), 1});
  }
  return suite;
}

Target load_external_target(const ExternalDescriptor& descriptor) {
  const std::string text = read_file(descriptor.source);
  Genome genome = is_listing(descriptor.source) ? Genome(parse_linear(text))
                                                : Genome(parse_tree(text));
  return Target{std::move(genome), std::make_shared<ExternalEvaluator>(descriptor)};
}

}  // namespace mutrb
