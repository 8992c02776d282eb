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

// Turning genomes into verdicts: output comparison, suite execution, the
// neutrality predicate and mutant deduplication.

#ifndef MUTRB_HARNESS_HPP_
#define MUTRB_HARNESS_HPP_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_set>

#include "mutrb/genome.hpp"
#include "mutrb/minilang.hpp"
#include "mutrb/suite.hpp"

namespace mutrb {

enum class Outcome { Neutral, TestFailed, Crashed, Timeout, Invalid };

std::string_view to_string(Outcome outcome);

struct Verdict {
  Outcome outcome = Outcome::Neutral;
  std::string first_failure;  // name of the case that decided a non-neutral outcome
  std::size_t cases_run = 0;

  bool neutral() const { return outcome == Outcome::Neutral; }

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Exact: byte equality. WhitespaceInsensitive: equal whitespace-delimited
/// token sequences. CrashOnly: always true.
bool compare_output(std::string_view actual, std::string_view expected,
                    Comparator comparator);

/// Whether one execution passes a case under `comparator`.
bool passes(const Execution& run, const TestCase& test, Comparator comparator);

/// Runs the suite against a hermetic genome, stopping at the first failing
/// case. Invalid when the genome does not compile.
Verdict evaluate(const Genome& genome, const TestSuite& suite,
                 const Limits& limits = {});
Verdict evaluate(const Variant& variant, const TestSuite& suite,
                 const Limits& limits = {});

/// Evaluation back end for a target program.
class Evaluator {
 public:
  virtual ~Evaluator() = default;
  virtual Verdict evaluate(const Genome& genome, const TestSuite& suite) const = 0;
  virtual CoverageMap coverage(const Genome& genome,
                               const TestSuite& suite) const = 0;
  /// Limits for hermetic back ends; null otherwise.
  virtual const Limits* hermetic_limits() const { return nullptr; }
};

class HermeticEvaluator final : public Evaluator {
 public:
  explicit HermeticEvaluator(Limits limits = {}) : limits_(limits) {}

  Verdict evaluate(const Genome& genome, const TestSuite& suite) const override {
    return mutrb::evaluate(genome, suite, limits_);
  }
  CoverageMap coverage(const Genome& genome, const TestSuite& suite) const override {
    return coverage_of(genome, suite, limits_);
  }
  const Limits* hermetic_limits() const override { return &limits_; }

 private:
  Limits limits_;
};

/// The program under study plus the back end that evaluates its variants.
struct Target {
  Genome genome;
  std::shared_ptr<const Evaluator> evaluator;
};

Target hermetic_target(Genome genome, const Limits& limits = {});

/// Reads a `.mini` source or a `.lin` listing as a hermetic target.
Target load_hermetic_target(const std::filesystem::path& path,
                            const Limits& limits = {});

/// Reads `<dir>/<name>.in` / `<dir>/<name>.out` pairs, ordered by name.
/// Throws ConfigError when the directory is missing, a pair is incomplete, or
/// no case is found.
TestSuite load_suite(const std::filesystem::path& dir, Comparator comparator);

/// Throws OriginalFailsError unless the target passes its own suite.
void require_original_passes(const Target& target, const TestSuite& suite);

/// Set of canonical keys seen so far. insert-if-absent is linearizable, so the
/// ledger may be shared between workers.
class DedupLedger {
 public:
  /// True when the key was not seen before.
  bool offer(const std::string& key);

  std::size_t unique_count() const;
  std::size_t duplicate_count() const;

 private:
  mutable std::mutex mutex_;
  std::unordered_set<std::string> seen_;
  std::size_t duplicates_ = 0;
};

/// True ("fresh") iff canonical_key(genome) was not yet in the ledger.
bool dedup(DedupLedger& ledger, const Genome& genome);

}  // namespace mutrb

#endif  // MUTRB_HARNESS_HPP_
