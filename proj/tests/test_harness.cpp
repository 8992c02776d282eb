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

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>

#include "mutrb/harness.hpp"
#include "support.hpp"

namespace mutrb {
namespace {

using testing::sorter;
using testing::sorting_suite;

SiteId first_if(const TreeGenome& g) {
  for (const Site& s : g.sites()) {
    if (g.statement(s.id).kind == StmtKind::If) return s.id;
  }
  throw Error("no if statement");
}

TEST(Comparator, WhitespaceInsensitiveIgnoresTrailingSpace) {
  EXPECT_TRUE(compare_output("1 2 3 ", "1 2 3", Comparator::WhitespaceInsensitive));
  EXPECT_FALSE(compare_output("1 2 3 ", "1 2 4", Comparator::WhitespaceInsensitive));
}

TEST(Comparator, ExactIsBytewise) {
  EXPECT_FALSE(compare_output("1 2 3 ", "1 2 3", Comparator::Exact));
  EXPECT_TRUE(compare_output("1 2 3 ", "1 2 3 ", Comparator::Exact));
}

TEST(Comparator, CrashOnlyAlwaysPasses) {
  EXPECT_TRUE(compare_output("garbage", "anything", Comparator::CrashOnly));
}

TEST(Comparator, NamesRoundTrip) {
  for (Comparator c : {Comparator::Exact, Comparator::WhitespaceInsensitive,
                       Comparator::CrashOnly}) {
    EXPECT_EQ(parse_comparator(to_string(c)), c);
  }
  EXPECT_THROW(parse_comparator("fuzzy"), Error);
}

TEST(Evaluate, OriginalBubbleIsNeutral) {
  const Target t = sorter("bubble");
  const Verdict v = t.evaluator->evaluate(t.genome, sorting_suite());
  EXPECT_EQ(v.outcome, Outcome::Neutral);
  EXPECT_EQ(v.cases_run, sorting_suite().cases.size());
}

TEST(Evaluate, SuiteHasTenCases) { EXPECT_EQ(sorting_suite().cases.size(), 10u); }

TEST(Evaluate, DeletingTheSwapFailsOnFirstUnsortedCase) {
  const Target t = sorter("bubble");
  const auto& tree = std::get<TreeGenome>(t.genome);
  const Genome mutant =
      apply_mutation(t.genome, Mutation{MutationKind::Delete, std::nullopt, first_if(tree)});
  const TestSuite suite = sorting_suite();
  const Verdict v = evaluate(mutant, suite);
  EXPECT_EQ(v.outcome, Outcome::TestFailed);

  std::string first_unsorted;
  for (const TestCase& c : suite.cases) {
    auto xs = parse_input(c.input);
    if (!std::is_sorted(xs.begin(), xs.end())) {
      first_unsorted = c.name;
      break;
    }
  }
  EXPECT_EQ(v.first_failure, first_unsorted);
}

TEST(Evaluate, NonterminatingMutantTimesOut) {
  const Genome g = parse_tree("x := 0; while x < 1 { x := x + 1; } print x;");
  const Genome mutant = apply_mutation(g, Mutation{MutationKind::Delete, std::nullopt, 2});
  Limits limits;
  limits.max_steps = 5000;
  const TestSuite suite{{{"t", "", "1 ", 1}}, Comparator::Exact};
  EXPECT_EQ(evaluate(g, suite, limits).outcome, Outcome::Neutral);
  EXPECT_EQ(evaluate(mutant, suite, limits).outcome, Outcome::Timeout);
}

TEST(Evaluate, RuntimeErrorIsCrash) {
  const TestSuite suite{{{"t", "", "", 1}}, Comparator::CrashOnly};
  EXPECT_EQ(evaluate(Genome(parse_tree("x := 1 / 0;")), suite).outcome, Outcome::Crashed);
}

TEST(Evaluate, BreakOutsideLoopIsInvalid) {
  const Genome g = parse_tree("while 1 { break; } print 1;");
  const Genome mutant = apply_mutation(g, Mutation{MutationKind::Copy, 1, 2});
  const TestSuite suite{{{"t", "", "1 ", 1}}, Comparator::Exact};
  EXPECT_EQ(evaluate(mutant, suite).outcome, Outcome::Invalid);
}

TEST(Evaluate, Deterministic) {
  const Target t = sorter("merge");
  Rng rng(5);
  const CoverageMap cov = t.evaluator->coverage(t.genome, sorting_suite());
  for (int i = 0; i < 20; ++i) {
    const Genome m = apply_mutation(
        t.genome, sample_mutation(t.genome, cov, kAllMutationKinds[i % 3], rng));
    EXPECT_EQ(evaluate(m, sorting_suite()), evaluate(m, sorting_suite()));
  }
}

TEST(Gate, BrokenOriginalIsRefused) {
  const Target t = hermetic_target(parse_tree("print 0;"));
  EXPECT_THROW(require_original_passes(t, sorting_suite()), OriginalFailsError);
}

TEST(Suite, MissingOutputFileIsConfigError) {
  testing::TempDir dir;
  std::ofstream(dir.path() / "a.in") << "1";
  EXPECT_THROW(load_suite(dir.path(), Comparator::Exact), ConfigError);
}

TEST(Dedup, SameGenomeTwice) {
  DedupLedger ledger;
  const Genome g = parse_tree("x := 1;");
  EXPECT_TRUE(dedup(ledger, g));
  EXPECT_FALSE(dedup(ledger, g));
  EXPECT_EQ(ledger.unique_count(), 1u);
  EXPECT_EQ(ledger.duplicate_count(), 1u);
}

TEST(Dedup, StatementAfterExitIsDuplicate) {
  DedupLedger ledger;
  EXPECT_TRUE(dedup(ledger, parse_tree("x := 1; exit;")));
  EXPECT_FALSE(dedup(ledger, parse_tree("x := 1; exit; print x;")));
}

TEST(Dedup, CountsAreConserved) {
  const Target t = sorter("bubble");
  const CoverageMap cov = t.evaluator->coverage(t.genome, sorting_suite());
  DedupLedger ledger;
  Rng rng(600);
  for (int i = 0; i < 600; ++i) {
    dedup(ledger, apply_mutation(t.genome, sample_mutation(t.genome, cov,
                                                           kAllMutationKinds[i % 3], rng)));
  }
  EXPECT_EQ(ledger.unique_count() + ledger.duplicate_count(), 600u);
  EXPECT_GT(ledger.duplicate_count(), 0u);
}

}  // namespace
}  // namespace mutrb
