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

#include "mutrb/experiments.hpp"
#include "support.hpp"

namespace mutrb {
namespace {

using testing::sorter;
using testing::sorting_suite;

TestSuite single_case(std::string input, std::string expected) {
  return TestSuite{{{"t", std::move(input), std::move(expected), 1}}, Comparator::Exact};
}

// ---------------------------------------------------------------------------
// Robustness

TEST(Robustness, RecordsGiveRatio) {
  std::vector<MutantRecord> recs;
  for (int i = 0; i < 10; ++i) recs.push_back({kAllMutationKinds[i % 3], i < 3});
  const RobustnessReport r = robustness_from_records(recs, Comparator::Exact);
  EXPECT_DOUBLE_EQ(r.pooled_mutrb, 0.3);
  EXPECT_EQ(r.unique, 10u);
  EXPECT_EQ(r.neutral, 3u);
}

TEST(Robustness, EstimateIsDeterministicAndConsistent) {
  const Target t = sorter("insertion");
  const RobustnessReport a = estimate_mutrb(t, sorting_suite(), 40, Comparator::Exact, 9);
  const RobustnessReport b = estimate_mutrb(t, sorting_suite(), 40, Comparator::Exact, 9);
  EXPECT_EQ(a.pooled_mutrb, b.pooled_mutrb);
  std::uint64_t unique = 0, neutral = 0;
  for (const auto& [kind, s] : a.per_operator) {
    EXPECT_GE(s.mutrb, 0.0);
    EXPECT_LE(s.mutrb, 1.0);
    EXPECT_LE(s.unique, 40u);
    EXPECT_GE(s.attempts, s.unique);
    unique += s.unique;
    neutral += s.neutral;
  }
  EXPECT_EQ(unique, a.unique);
  EXPECT_EQ(neutral, a.neutral);
  EXPECT_GT(a.ci95, 0.0);
  EXPECT_DOUBLE_EQ(a.coverage_fraction, 1.0);
}

TEST(Robustness, ZeroSamplesRejected) {
  EXPECT_THROW(estimate_mutrb(sorter("bubble"), sorting_suite(), 0, Comparator::Exact, 1),
               ExperimentError);
}

TEST(Robustness, SmallSpaceIsExhaustedNotOversampled) {
  const Target t = hermetic_target(parse_tree("x := 1; y := 2; print x + y;"));
  const RobustnessReport r =
      estimate_mutrb(t, single_case("", "3 "), 200, Comparator::Exact, 4);
  EXPECT_EQ(r.per_operator.at(MutationKind::Delete).unique, 3u);
  EXPECT_EQ(r.per_operator.at(MutationKind::Delete).attempts, 3u);
}

TEST(Robustness, SwapInfeasibleIsNotedAndSkipped) {
  const Target t = hermetic_target(parse_tree("print 3;"));
  const RobustnessReport r =
      estimate_mutrb(t, single_case("", "3 "), 10, Comparator::Exact, 4);
  EXPECT_TRUE(r.per_operator.at(MutationKind::Swap).skipped);
  EXPECT_FALSE(r.notes.empty());
}

TEST(Robustness, ExhaustiveCountsDeletesOfStraightLine) {
  const Target t = hermetic_target(parse_tree("x := 1; y := 2; print x;"));
  const RobustnessReport r = exhaustive_mutrb(t, single_case("", "1 "), Comparator::Exact);
  EXPECT_EQ(r.per_operator.at(MutationKind::Delete).space, 3u);
  EXPECT_EQ(r.per_operator.at(MutationKind::Delete).neutral, 1u);  // y := 2 is dead
  EXPECT_EQ(r.ci95, 0.0);
  EXPECT_TRUE(r.exhaustive);
}

TEST(Robustness, ExhaustiveCapIsEnforced) {
  EXPECT_THROW(exhaustive_mutrb(sorter("bubble"), sorting_suite(), Comparator::Exact, 10),
               ExperimentError);
}

TEST(Robustness, BrokenOriginalRefused) {
  EXPECT_THROW(estimate_mutrb(hermetic_target(parse_tree("print 1;")), sorting_suite(), 5,
                              Comparator::Exact, 1),
               OriginalFailsError);
}

TEST(Robustness, WaldHalfWidth) {
  EXPECT_NEAR(wald_ci95(0.5, 100), 0.098, 1e-12);
  EXPECT_EQ(wald_ci95(0.5, 0), 0.0);
}

// ---------------------------------------------------------------------------
// Walk

TEST(Walk, ZeroStepsIsOriginalOnly) {
  const Target t = sorter("bubble");
  WalkOptions o;
  o.population = 4;
  o.steps = 0;
  o.robustness_samples = 6;
  const WalkResult w = neutral_walk(t, sorting_suite(), o, 1);
  ASSERT_EQ(w.series.size(), 1u);
  EXPECT_DOUBLE_EQ(w.series[0].mean_size, static_cast<double>(w.original_size));
  EXPECT_EQ(w.size_unit, "statements");
}

TEST(Walk, MembersStayNeutralWithFullProvenance) {
  const Target t = sorter("bubble");
  WalkOptions o;
  o.population = 5;
  o.steps = 3;
  o.robustness_samples = 6;
  const WalkResult w = neutral_walk(t, sorting_suite(), o, 21);
  ASSERT_EQ(w.series.size(), 4u);
  ASSERT_EQ(w.final_population.size(), 5u);
  for (const Variant& v : w.final_population) {
    EXPECT_EQ(v.provenance.size(), 3u);
    EXPECT_TRUE(evaluate(v, sorting_suite()).neutral());
    EXPECT_EQ(replay(t.genome, v.provenance), v.genome);
  }
}

TEST(Walk, SizeCapHolds) {
  const Target t = sorter("quick");
  WalkOptions o;
  o.population = 6;
  o.steps = 8;
  o.size_cap = true;
  o.robustness_samples = 3;
  const WalkResult w = neutral_walk(t, sorting_suite(), o, 2);
  for (const WalkStep& s : w.series) {
    EXPECT_LE(s.max_size, w.original_size);
    EXPECT_LE(s.mean_size, static_cast<double>(w.original_size));
  }
}

TEST(Walk, StallReportsPartialSeries) {
  // Every mutation of this program changes its output.
  const Target t = hermetic_target(parse_tree("print 1; print 2;"));
  WalkOptions o;
  o.population = 2;
  o.steps = 3;
  o.robustness_samples = 2;
  o.attempts_per_member = 5;
  try {
    neutral_walk(t, single_case("", "1 2 "), o, 3);
    FAIL();
  } catch (const WalkStalled& e) {
    EXPECT_EQ(e.partial().series.size(), 1u);
  }
}

// ---------------------------------------------------------------------------
// Defects

TEST(Defects, ZeroDefectsIsIdentity) {
  const Target t = sorter("bubble");
  const SeededProgram s = seed_defects(t, sorting_suite(), 0, 1);
  EXPECT_EQ(s.buggy.genome, t.genome);
  EXPECT_TRUE(s.defects.empty());
}

TEST(Defects, ExtraStatementKeepsSuiteAndDiscriminates) {
  const Target t = sorter("bubble");
  SeedOptions o;
  o.classes = {DefectClass::ExtraStatement};
  const SeededProgram s = seed_defects(t, sorting_suite(), 1, 42, o);
  ASSERT_EQ(s.defects.size(), 1u);
  const DefectSpec& d = s.defects[0];
  EXPECT_EQ(d.cls, DefectClass::ExtraStatement);
  EXPECT_TRUE(evaluate(s.buggy.genome, sorting_suite()).neutral());
  const TestSuite held{{d.held_out}, Comparator::Exact};
  EXPECT_FALSE(evaluate(s.buggy.genome, held).neutral());
  EXPECT_TRUE(evaluate(t.genome, held).neutral());
}

TEST(Defects, StackedDefectsEachDiscriminate) {
  const Target t = sorter("bubble");
  const SeededProgram s = seed_defects(t, sorting_suite(), 3, 8);
  ASSERT_EQ(s.defects.size(), 3u);
  EXPECT_TRUE(evaluate(s.buggy.genome, sorting_suite()).neutral());
  for (const DefectSpec& d : s.defects) {
    const TestSuite held{{d.held_out}, Comparator::Exact};
    EXPECT_FALSE(evaluate(s.buggy.genome, held).neutral()) << d.description;
    EXPECT_TRUE(evaluate(t.genome, held).neutral()) << d.description;
  }
}

TEST(Defects, InapplicableClassYieldsNothing) {
  const TreeGenome g = parse_tree("print 3;");
  Rng rng(1);
  EXPECT_FALSE(inject_defect(g, DefectClass::ConstantForVariable, 0, rng));
  EXPECT_FALSE(inject_defect(g, DefectClass::MissingConditionalClause, 0, rng));
}

TEST(Defects, MissingClauseDropsOneConjunct) {
  const TreeGenome g = parse_tree("if x > 1 and y > 2 { print 1; }");
  Rng rng(1);
  const auto out = inject_defect(g, DefectClass::MissingConditionalClause, 0, rng);
  ASSERT_TRUE(out);
  const std::string text = serialize(*out);
  EXPECT_TRUE(text.find("if x > 1 {") != std::string::npos ||
              text.find("if y > 2 {") != std::string::npos)
      << text;
}

TEST(Defects, ClassNamesRoundTrip) {
  for (DefectClass c : kAllDefectClasses) EXPECT_EQ(parse_defect_class(to_string(c)), c);
  EXPECT_THROW(parse_defect_class("typo"), Error);
}

// ---------------------------------------------------------------------------
// Repair

TEST(Repair, ExtraStatementIsRevertedBySameLineDelete) {
  const Target t = sorter("bubble");
  SeedOptions o;
  o.classes = {DefectClass::ExtraStatement};
  const SeededProgram s = seed_defects(t, sorting_suite(), 1, 42, o);
  const RepairReport r = proactive_repair(s.buggy, sorting_suite(), s.defects, 5000, 3,
                                          RepairMode::ExhaustiveFirstOrder);
  EXPECT_GE(r.unique_bugs_fixed, 1u);
  bool same_line_delete = false;
  for (const Repair& rep : r.repairs) {
    if (rep.locality == Locality::SameLine && rep.mutation.kind == MutationKind::Delete) {
      same_line_delete = true;
    }
  }
  EXPECT_TRUE(same_line_delete);
  EXPECT_EQ(r.bug_fix_variants, r.repairs.size());
}

TEST(Repair, ReportedRepairsReverify) {
  const Target t = sorter("bubble");
  const SeededProgram s = seed_defects(t, sorting_suite(), 2, 5);
  const NeutralPool pool =
      generate_neutral_variants(s.buggy, sorting_suite(), 100, RepairMode::Sampled, 7);
  const RepairReport r = score_repairs(s.buggy, sorting_suite(), s.defects, pool);
  for (const Repair& rep : r.repairs) {
    const Genome g = apply_mutation(s.buggy.genome, rep.mutation);
    EXPECT_EQ(canonical_key(g), rep.digest);
    EXPECT_TRUE(evaluate(g, sorting_suite()).neutral());
    for (std::size_t d : rep.fixed) {
      EXPECT_TRUE(evaluate(g, TestSuite{{s.defects[d].held_out}, Comparator::Exact}).neutral());
    }
  }
}

TEST(Repair, DefectAtUncoveredSiteIsNeverRepaired) {
  const Target t = hermetic_target(
      parse_tree("read x;\nif x > 100 {\n  print x + 1;\n} else {\n  print x;\n}\n"));
  const TestSuite suite = single_case("5", "5 ");
  Rng rng(1);
  // Perturb the literal in the uncovered then-branch.
  std::optional<TreeGenome> buggy;
  for (int i = 0; i < 50 && !buggy; ++i) {
    auto cand = inject_defect(std::get<TreeGenome>(t.genome), DefectClass::WrongParameter, 2,
                              rng);
    if (cand && serialize(*cand).find("x + 1") == std::string::npos &&
        serialize(*cand).find("print x + ") != std::string::npos) {
      buggy = std::move(cand);
    }
  }
  ASSERT_TRUE(buggy);
  DefectSpec d;
  d.cls = DefectClass::WrongParameter;
  d.site = 2;
  d.lines = buggy->sites()[2].span;
  d.held_out = TestCase{"held-out-1", "200", "201 ", 1};
  const Target b = hermetic_target(Genome(*buggy));
  ASSERT_TRUE(evaluate(b.genome, suite).neutral());
  const RepairReport r =
      proactive_repair(b, suite, {d}, 1000, 1, RepairMode::ExhaustiveFirstOrder);
  EXPECT_EQ(r.unique_bugs_fixed, 0u);
  EXPECT_TRUE(r.repairs.empty());
  EXPECT_FALSE(r.variants_to_first_fix);
}

TEST(Repair, HeldOutTestsDoNotInfluenceGeneration) {
  const Target t = sorter("bubble");
  const SeededProgram s = seed_defects(t, sorting_suite(), 2, 13);
  std::vector<DefectSpec> dummies = s.defects;
  for (DefectSpec& d : dummies) d.held_out = TestCase{"dummy", "0", "0 \n", 1};
  const RepairReport real =
      proactive_repair(s.buggy, sorting_suite(), s.defects, 200, 17, RepairMode::Sampled);
  const RepairReport fake =
      proactive_repair(s.buggy, sorting_suite(), dummies, 200, 17, RepairMode::Sampled);
  EXPECT_EQ(real.generation_digest, fake.generation_digest);
  EXPECT_EQ(real.variants_generated, fake.variants_generated);
}

TEST(Repair, GenerationStallIsReportedNotFatal) {
  const Target t = hermetic_target(parse_tree("x := 1; print x;"));
  const NeutralPool pool = generate_neutral_variants(t, single_case("", "1 "), 100,
                                                     RepairMode::ExhaustiveFirstOrder, 1);
  EXPECT_TRUE(pool.stalled);
  EXPECT_LT(pool.variants.size(), 100u);
}

TEST(Locality, Classification) {
  const LineSpan defect{10, 10};
  EXPECT_EQ(classify_locality({{10, 10}}, defect), Locality::SameLine);
  EXPECT_EQ(classify_locality({{8, 12}}, defect), Locality::SameLine);
  EXPECT_EQ(classify_locality({{13, 13}}, defect), Locality::Near);
  EXPECT_EQ(classify_locality({{5, 5}}, defect), Locality::Near);
  EXPECT_EQ(classify_locality({{16, 16}}, defect), Locality::Compensatory);
  EXPECT_EQ(classify_locality({{50, 52}}, defect), Locality::Compensatory);
  EXPECT_EQ(classify_locality({{50, 52}, {9, 9}}, defect), Locality::Near);
}

TEST(Selection, PrefersNewPositions) {
  const Genome g = parse_tree("a:=1; b:=2; c:=3; d:=4;");
  NeutralPool pool;
  for (SiteId s : {0u, 0u, 1u, 1u, 2u}) {
    pool.variants.push_back(Variant{g, {Mutation{MutationKind::Delete, std::nullopt, s}}, ""});
    pool.keys.push_back(std::to_string(pool.keys.size()));
  }
  EXPECT_EQ(select_distinct_positions(pool, 3), (std::vector<std::size_t>{0, 2, 4}));
  EXPECT_EQ(select_distinct_positions(pool, 4), (std::vector<std::size_t>{0, 2, 4, 1}));
  EXPECT_EQ(select_distinct_positions(pool, 9).size(), 5u);
}

// ---------------------------------------------------------------------------
// Sweep

TEST(Pearson, KnownValues) {
  EXPECT_NEAR(*pearson({1, 2, 3}, {2, 4, 6}), 1.0, 1e-12);
  EXPECT_NEAR(*pearson({1, 2, 3}, {3, 2, 1}), -1.0, 1e-12);
  EXPECT_FALSE(pearson({1, 2, 3}, {2, 2, 2}));
  EXPECT_FALSE(pearson({1}, {1}));
  EXPECT_FALSE(pearson({1, 2}, {1}));
}

TEST(Sweep, RejectsBadNValues) {
  EXPECT_THROW(seeded_bug_sweep(sorter("bubble"), sorting_suite(), {}, 10, 1), ExperimentError);
  EXPECT_THROW(seeded_bug_sweep(sorter("bubble"), sorting_suite(), {0}, 10, 1),
               ExperimentError);
}

TEST(Sweep, SmallSweepIsDeterministic) {
  const Target t = sorter("bubble");
  const SweepReport a = seeded_bug_sweep(t, sorting_suite(), {1, 2}, 60, 5);
  const SweepReport b = seeded_bug_sweep(t, sorting_suite(), {1, 2}, 60, 5);
  ASSERT_EQ(a.points.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(a.points[i].bugs_fixed, b.points[i].bugs_fixed);
    EXPECT_EQ(a.points[i].variants_needed, b.points[i].variants_needed);
    EXPECT_LE(a.points[i].bugs_fixed, a.points[i].n_seeded);
    EXPECT_LE(a.points[i].variants_generated, 60u);
  }
  EXPECT_EQ(a.pearson_r.has_value(), b.pearson_r.has_value());
}

}  // namespace
}  // namespace mutrb
