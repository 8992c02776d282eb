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

#include "mutrb/harness.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "mutrb/error.hpp"

namespace mutrb {
namespace {

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

std::string_view to_string(Comparator comparator) {
  switch (comparator) {
    case Comparator::Exact: return "exact";
    case Comparator::WhitespaceInsensitive: return "whitespace";
    case Comparator::CrashOnly: return "crash-only";
  }
  return "?";
}

Comparator parse_comparator(std::string_view name) {
  for (auto c : {Comparator::Exact, Comparator::WhitespaceInsensitive,
                 Comparator::CrashOnly}) {
    if (to_string(c) == name) return c;
  }
  throw Error("unknown comparator '" + std::string(name) +
              "' (expected exact, whitespace or crash-only)");
}

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::Neutral: return "neutral";
    case Outcome::TestFailed: return "test-failed";
    case Outcome::Crashed: return "crashed";
    case Outcome::Timeout: return "timeout";
    case Outcome::Invalid: return "invalid";
  }
  return "?";
}

bool compare_output(std::string_view actual, std::string_view expected,
                    Comparator comparator) {
  switch (comparator) {
    case Comparator::Exact: return actual == expected;
    case Comparator::WhitespaceInsensitive: return tokens(actual) == tokens(expected);
    case Comparator::CrashOnly: return true;
  }
  return false;
}

bool passes(const Execution& run, const TestCase& test, Comparator comparator) {
  return run.status == ExecStatus::Completed &&
         compare_output(run.output, test.expected_output, comparator);
}

Verdict evaluate(const Genome& genome, const TestSuite& suite,
                 const Limits& limits) {
  Verdict v;
  std::unique_ptr<Executable> exe;
  try {
    exe = compile(genome);
  } catch (const InvalidProgram&) {
    v.outcome = Outcome::Invalid;
    return v;
  }
  for (const TestCase& test : suite.cases) {
    const Execution run = exe->run(parse_input(test.input), limits);
    ++v.cases_run;
    Outcome o = Outcome::Neutral;
    if (run.status == ExecStatus::RuntimeError) {
      o = Outcome::Crashed;
    } else if (run.status == ExecStatus::StepLimit) {
      o = Outcome::Timeout;
    } else if (!compare_output(run.output, test.expected_output, suite.comparator)) {
      o = Outcome::TestFailed;
    }
    if (o != Outcome::Neutral) {
      v.outcome = o;
      v.first_failure = test.name;
      return v;
    }
  }
  return v;
}

Verdict evaluate(const Variant& variant, const TestSuite& suite,
                 const Limits& limits) {
  return evaluate(variant.genome, suite, limits);
}

Target hermetic_target(Genome genome, const Limits& limits) {
  return Target{std::move(genome), std::make_shared<HermeticEvaluator>(limits)};
}

Target load_hermetic_target(const std::filesystem::path& path,
                            const Limits& limits) {
  const std::string text = slurp(path);
  if (path.extension() == ".lin") return hermetic_target(parse_linear(text), limits);
  return hermetic_target(parse_tree(text), limits);
}

TestSuite load_suite(const std::filesystem::path& dir, Comparator comparator) {
  if (!std::filesystem::is_directory(dir)) {
    throw ConfigError("suite directory " + dir.string() + " does not exist");
  }
  std::map<std::string, std::pair<bool, bool>> seen;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = entry.path().extension().string();
    const auto stem = entry.path().stem().string();
    if (ext == ".in") seen[stem].first = true;
    if (ext == ".out") seen[stem].second = true;
  }
  TestSuite suite;
  suite.comparator = comparator;
  for (const auto& [name, have] : seen) {
    if (!have.first || !have.second) {
      throw ConfigError("suite case '" + name + "' needs both .in and .out files");
    }
    suite.cases.push_back(TestCase{name, slurp(dir / (name + ".in")),
                                   slurp(dir / (name + ".out")), 1});
  }
  if (suite.cases.empty()) {
    throw ConfigError("suite directory " + dir.string() + " has no test cases");
  }
  return suite;
}

void require_original_passes(const Target& target, const TestSuite& suite) {
  const Verdict v = target.evaluator->evaluate(target.genome, suite);
  if (!v.neutral()) {
    throw OriginalFailsError("original program does not pass its suite (" +
                             std::string(to_string(v.outcome)) +
                             (v.first_failure.empty() ? "" : " on " + v.first_failure) +
                             ")");
  }
}

bool DedupLedger::offer(const std::string& key) {
  std::lock_guard<std::mutex> lock(mutex_);
  if (seen_.insert(key).second) return true;
  ++duplicates_;
  return false;
}

std::size_t DedupLedger::unique_count() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return seen_.size();
}

std::size_t DedupLedger::duplicate_count() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return duplicates_;
}

bool dedup(DedupLedger& ledger, const Genome& genome) {
  return ledger.offer(canonical_key(genome));
}

}  // namespace mutrb
