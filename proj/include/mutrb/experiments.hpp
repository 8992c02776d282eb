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

// Robustness measurement, neutral walks, defect seeding and proactive repair.
//
// Every operation takes a master seed and a worker count. Random streams are
// derived per task index and results are merged in index order, so reports do
// not depend on `jobs`.

#ifndef MUTRB_EXPERIMENTS_HPP_
#define MUTRB_EXPERIMENTS_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mutrb/error.hpp"
#include "mutrb/genome.hpp"
#include "mutrb/harness.hpp"
#include "mutrb/rng.hpp"

namespace mutrb {

inline constexpr std::uint64_t kDefaultEnumerationCap = 250000;

// ---------------------------------------------------------------------------
// Robustness

struct OperatorStats {
  std::uint64_t attempts = 0;     // mutations drawn, duplicates included
  std::uint64_t unique = 0;       // unique mutants evaluated
  std::uint64_t neutral = 0;
  double mutrb = 0.0;             // neutral / unique
  std::uint64_t space = 0;        // valid mutations over covered sites
  std::uint64_t unique_space = 0; // distinct canonical mutants in that space
  bool skipped = false;           // no valid mutation of this kind
};

struct RobustnessReport {
  std::map<MutationKind, OperatorStats> per_operator;
  std::uint64_t unique = 0;   // sum over operators
  std::uint64_t neutral = 0;  // sum over operators
  double pooled_mutrb = 0.0;
  double ci95 = 0.0;
  Comparator comparator = Comparator::Exact;
  double coverage_fraction = 0.0;
  std::uint64_t seed = 0;
  bool exhaustive = false;
  std::vector<std::string> notes;
};

/// One recorded mutant verdict, as stored in replay fixtures.
struct MutantRecord {
  MutationKind kind = MutationKind::Copy;
  bool neutral = false;
};

/// MutRB over recorded verdicts: neutral / unique per operator and pooled.
RobustnessReport robustness_from_records(const std::vector<MutantRecord>& records,
                                         Comparator comparator);

/// Wald half-width 1.96 * sqrt(p(1-p)/n); zero when n is zero.
double wald_ci95(double p, std::uint64_t n);

/// Samples each operator until `per_op_samples` unique mutants are collected
/// or its space is exhausted. The pooled value weights operators by their
/// unique mutant space.
RobustnessReport estimate_mutrb(const Target& target, const TestSuite& suite,
                                std::size_t per_op_samples, Comparator comparator,
                                std::uint64_t seed, int jobs = 1);

/// Evaluates every unique mutant over covered sites. Throws ExperimentError
/// when the mutation space exceeds `cap`.
RobustnessReport exhaustive_mutrb(const Target& target, const TestSuite& suite,
                                  Comparator comparator,
                                  std::uint64_t cap = kDefaultEnumerationCap,
                                  int jobs = 1);

// ---------------------------------------------------------------------------
// Neutral walks

struct WalkOptions {
  std::size_t population = 100;
  std::size_t steps = 250;
  bool size_cap = false;
  std::size_t robustness_samples = 30;  // sampled mutations per member per step
  std::size_t attempts_per_member = 200;
};

struct WalkStep {
  std::size_t step = 0;
  double mean_size = 0.0;
  double mean_mutrb = 0.0;
  std::size_t max_size = 0;
  std::vector<std::string> population;  // canonical keys
};

struct WalkResult {
  std::vector<WalkStep> series;
  std::vector<Variant> final_population;
  std::size_t original_size = 0;
  std::string size_unit;
  std::uint64_t seed = 0;
};

/// A walk step could not refill its population within the attempt budget.
class WalkStalled : public ExperimentError {
 public:
  WalkStalled(const std::string& what, WalkResult partial)
      : ExperimentError(what), partial_(std::move(partial)) {}
  const WalkResult& partial() const { return partial_; }

 private:
  WalkResult partial_;
};

WalkResult neutral_walk(const Target& target, const TestSuite& suite,
                        const WalkOptions& options, std::uint64_t seed,
                        int jobs = 1);

// ---------------------------------------------------------------------------
// Defects

enum class DefectClass {
  MissingConditionalClause,
  ExtraStatement,
  ConstantForVariable,
  WrongParameter,
};

inline constexpr DefectClass kAllDefectClasses[] = {
    DefectClass::MissingConditionalClause, DefectClass::ExtraStatement,
    DefectClass::ConstantForVariable, DefectClass::WrongParameter};

std::string_view to_string(DefectClass cls);
DefectClass parse_defect_class(std::string_view name);

struct DefectSpec {
  DefectClass cls = DefectClass::ExtraStatement;
  SiteId site = 0;   // site in the final buggy program
  LineSpan lines;    // its lines in the final buggy program
  std::string description;
  TestCase held_out;
};

struct SeedOptions {
  std::vector<DefectClass> classes{std::begin(kAllDefectClasses),
                                   std::end(kAllDefectClasses)};
  std::size_t attempts_per_defect = 200;
  std::size_t enumerated_inputs = 2000;
  std::size_t random_inputs = 2000;
  std::size_t max_random_length = 12;
  std::size_t restarts = 8;  // fresh stacking tries after a stage dead-ends
};

struct SeededProgram {
  Target buggy;
  std::vector<DefectSpec> defects;
};

/// Applies `n` defects one after another. Each keeps the visible suite
/// passing and comes with a held-out case that fails on the buggy program and
/// passes on the original.
SeededProgram seed_defects(const Target& target, const TestSuite& suite,
                           std::size_t n, std::uint64_t seed,
                           const SeedOptions& options = {}, int jobs = 1);

/// Applies one defect of `cls` at `site` when applicable. Returns nullopt when
/// the class has nothing to act on there. ExtraStatement copies a statement
/// drawn from `sources` (all sites when null) to `site`; `defect_site`
/// receives the id of the changed or inserted statement.
std::optional<TreeGenome> inject_defect(const TreeGenome& genome, DefectClass cls,
                                        SiteId site, Rng& rng,
                                        std::string* description = nullptr,
                                        SiteId* defect_site = nullptr,
                                        const std::vector<Site>* sources = nullptr);

// ---------------------------------------------------------------------------
// Proactive repair

enum class RepairMode { Sampled, ExhaustiveFirstOrder };

std::string_view to_string(RepairMode mode);
RepairMode parse_repair_mode(std::string_view name);

enum class Locality { SameLine, Near, Compensatory };

std::string_view to_string(Locality locality);

inline constexpr int kNearLines = 5;

/// SameLine when a repair span intersects `defect`, Near when within
/// kNearLines lines of it, Compensatory otherwise.
Locality classify_locality(const std::vector<LineSpan>& repair, LineSpan defect);

/// Locality of a first-order `repair` of `buggy` relative to `defect`.
Locality classify_repair_locality(const Genome& buggy, const Mutation& repair,
                                  const DefectSpec& defect);

/// First-order neutral variants of a program, in generation order.
struct NeutralPool {
  std::vector<Variant> variants;
  std::vector<std::string> keys;  // canonical keys, parallel to variants
  std::uint64_t attempts = 0;
  bool stalled = false;
};

/// Generation sees only the program and its visible suite.
NeutralPool generate_neutral_variants(const Target& target, const TestSuite& suite,
                                      std::size_t n_variants, RepairMode mode,
                                      std::uint64_t seed, int jobs = 1);

struct Repair {
  std::size_t index = 0;  // position in generation order
  std::string digest;
  Mutation mutation;
  std::vector<std::size_t> fixed;  // defect indices
  Locality locality = Locality::Compensatory;
};

struct RepairReport {
  RepairMode mode = RepairMode::Sampled;
  std::size_t n_variants = 0;
  std::size_t variants_generated = 0;
  bool stalled = false;
  std::vector<Repair> repairs;
  std::size_t unique_bugs_fixed = 0;
  std::size_t bug_fix_variants = 0;
  std::optional<std::size_t> variants_to_first_fix;
  std::map<Locality, std::size_t> locality_counts;
  std::string generation_digest;  // digest over generated variant keys in order
  std::uint64_t seed = 0;
};

/// Scores `pool` against held-out cases. A variant repairs defect d when it
/// passes d's held-out case (it already passes the visible suite).
RepairReport score_repairs(const Target& buggy, const TestSuite& suite,
                           const std::vector<DefectSpec>& defects,
                           const NeutralPool& pool, int jobs = 1);

RepairReport proactive_repair(const Target& buggy, const TestSuite& suite,
                              const std::vector<DefectSpec>& defects,
                              std::size_t n_variants, std::uint64_t seed,
                              RepairMode mode, int jobs = 1);

// ---------------------------------------------------------------------------
// Seeded-bug sweep

struct SweepPoint {
  std::size_t n_seeded = 0;
  std::size_t bugs_fixed = 0;
  std::optional<std::size_t> variants_needed;
  std::size_t bug_fix_variants = 0;
  std::size_t variants_generated = 0;
};

struct SweepReport {
  std::vector<SweepPoint> points;
  std::optional<double> pearson_r;
  std::size_t n_variants = 0;
  RepairMode mode = RepairMode::Sampled;
  std::uint64_t seed = 0;
};

/// Pearson correlation; nullopt when the lengths differ, fewer than two
/// points are given, or either series is constant.
std::optional<double> pearson(const std::vector<double>& xs,
                              const std::vector<double>& ys);

/// Picks `count` variants greedily, each time taking the one that adds the
/// most program positions not yet modified; ties go to generation order.
std::vector<std::size_t> select_distinct_positions(const NeutralPool& pool,
                                                   std::size_t count);

struct SweepOptions {
  RepairMode mode = RepairMode::Sampled;
  std::size_t pool_factor = 2;  // candidates generated per selected variant
  SeedOptions seeding;
};

SweepReport seeded_bug_sweep(const Target& target, const TestSuite& suite,
                             const std::vector<std::size_t>& n_values,
                             std::size_t n_variants, std::uint64_t seed,
                             const SweepOptions& options = {}, int jobs = 1);

}  // namespace mutrb

#endif  // MUTRB_EXPERIMENTS_HPP_
