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

// Prints one PASS/FAIL line per acceptance criterion and exits nonzero if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "mutrb/cli.hpp"
#include "mutrb/external.hpp"
#include "mutrb/minilang.hpp"
#include "mutrb/report.hpp"
#include "support.hpp"

namespace mutrb {
namespace {

using testing::corpus;
using testing::fixture;
using testing::read_csv;
using testing::read_text;
using testing::sorter;
using testing::sorting_suite;

constexpr std::uint64_t kRecordedSeed = 42;
const char* const kSorters[] = {"bubble", "insertion", "merge", "quick"};

struct Result {
  bool pass = false;
  std::string detail;
};

Result verdict(bool pass, std::string detail) { return {pass, std::move(detail)}; }

std::string fmt(double v) { return format_float(v); }

// 1 ------------------------------------------------------------------------
Result formula_fidelity() {
  const RobustnessReport r =
      robustness_from_records(testing::read_records(fixture("formula_10_3.csv")),
                              Comparator::Exact);
  const std::string got = format_float(r.pooled_mutrb);
  return verdict(got == "0.300000" && r.unique == 10 && r.neutral == 3, "pooled " + got);
}

// 2 ------------------------------------------------------------------------
Result oracle_equivalence() {
  const Target t = sorter("bubble");
  const TestSuite suite = sorting_suite();
  const double exact = exhaustive_mutrb(t, suite, Comparator::Exact).pooled_mutrb;
  int hits = 0;
  std::ostringstream d;
  d << "exact " << fmt(exact) << ";";
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const RobustnessReport r = estimate_mutrb(t, suite, 200, Comparator::Exact, seed);
    const bool in = std::abs(r.pooled_mutrb - exact) <= r.ci95;
    hits += in;
    d << " " << fmt(r.pooled_mutrb) << (in ? "" : "*");
  }
  d << "; " << hits << "/10 intervals contain it";
  return verdict(hits >= 9, d.str());
}

// 3 ------------------------------------------------------------------------
Result nonzero_robustness() {
  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> golden;
  for (const auto& row : read_csv(fixture("exhaustive_goldens.csv"))) {
    golden[row[0]] = {std::stoull(row[1]), std::stoull(row[2])};
  }
  bool ok = true;
  std::ostringstream d;
  for (const char* name : kSorters) {
    const Target t = sorter(name);
    const TestSuite suite = sorting_suite();
    const double cov = coverage_of(t.genome, suite).covered_fraction();
    const RobustnessReport r = exhaustive_mutrb(t, suite, Comparator::Exact);
    const auto it = golden.find(name);
    const bool matches = it != golden.end() && it->second.first == r.unique &&
                         it->second.second == r.neutral;
    ok = ok && cov == 1.0 && r.pooled_mutrb > 0.0 && matches;
    d << name << " " << r.neutral << "/" << r.unique << "=" << fmt(r.pooled_mutrb)
      << (matches ? "" : " (golden mismatch)") << "; ";
  }
  return verdict(ok, d.str());
}

// 4 ------------------------------------------------------------------------
Result comparator_monotonicity() {
  const Target t = sorter("bubble");
  double v[3];
  const Comparator cs[3] = {Comparator::Exact, Comparator::WhitespaceInsensitive,
                            Comparator::CrashOnly};
  for (int i = 0; i < 3; ++i) {
    v[i] = exhaustive_mutrb(t, sorting_suite(cs[i]), cs[i]).pooled_mutrb;
  }
  return verdict(v[2] >= v[1] && v[1] >= v[0] && v[2] > v[0],
                 "exact " + fmt(v[0]) + " <= whitespace " + fmt(v[1]) + " <= crash-only " +
                     fmt(v[2]));
}

// 5 ------------------------------------------------------------------------
Result operator_laws() {
  std::vector<Genome> genomes;
  for (const char* name : kSorters) {
    genomes.push_back(parse_tree(read_text(corpus(std::string(name) + ".mini"))));
    genomes.push_back(parse_linear(read_text(corpus(std::string(name) + ".lin"))));
  }
  int failures = 0;
  Rng rng(kRecordedSeed);
  for (int i = 0; i < 1000; ++i) {
    const Genome& g = genomes[i % genomes.size()];
    const CoverageMap full = full_coverage(g);
    const auto* tree = std::get_if<TreeGenome>(&g);

    const Mutation s = sample_mutation(g, full, MutationKind::Swap, rng);
    Mutation back = s;
    if (tree) {
      const SiteId a = std::min(*s.source, s.target), b = std::max(*s.source, s.target);
      back = Mutation{MutationKind::Swap, a, b + tree->subtree_size(b) - tree->subtree_size(a)};
    }
    failures += !(apply_mutation(apply_mutation(g, s), back) == g);

    const Mutation del = sample_mutation(g, full, MutationKind::Delete, rng);
    const std::size_t dsz = tree ? tree->subtree_size(del.target) : 1;
    failures += site_count(apply_mutation(g, del)) != site_count(g) - dsz;

    const Mutation cp = sample_mutation(g, full, MutationKind::Copy, rng);
    const std::size_t csz = tree ? tree->subtree_size(*cp.source) : 1;
    const Genome copied = apply_mutation(g, cp);
    failures += site_count(copied) != site_count(g) + csz;

    const std::string text = serialize(copied);
    failures += !(tree ? Genome(parse_tree(text)) == copied
                       : Genome(parse_linear(text)) == copied);

    CoverageMap partial = full;
    for (auto& [id, n] : partial.counts) n = (id + i) % 3 ? 1 : 0;
    const Mutation pm = sample_mutation(g, partial, kAllMutationKinds[i % 3], rng);
    failures += partial.counts.at(pm.target) == 0 ||
                (pm.source && partial.counts.at(*pm.source) == 0);
  }

  const Genome flat = parse_tree("a:=1; b:=2; c:=3; d:=4; e:=5; f:=6; g:=7; h:=8;");
  std::map<SiteId, int> hits;
  for (int i = 0; i < 8000; ++i) {
    ++hits[sample_mutation(flat, full_coverage(flat), MutationKind::Delete, rng).target];
  }
  double chi2 = 0;
  for (const auto& [id, n] : hits) chi2 += (n - 1000.0) * (n - 1000.0) / 1000.0;
  const bool uniform = hits.size() == 8 && chi2 < 18.475;
  return verdict(failures == 0 && uniform,
                 std::to_string(failures) + " law violations; chi2 " + fmt(chi2));
}

// 6 ------------------------------------------------------------------------
Result walk_soundness() {
  const Target t = sorter("insertion");
  const TestSuite suite = sorting_suite();
  std::ostringstream d;
  bool ok = true;
  for (bool cap : {false, true}) {
    WalkOptions o;
    o.population = 20;
    o.steps = 50;
    o.size_cap = cap;
    const WalkResult w = neutral_walk(t, suite, o, kRecordedSeed);
    std::size_t bad = 0, over = 0;
    for (const Variant& v : w.final_population) {
      bad += !(v.provenance.size() == 50 && evaluate(v, suite).neutral() &&
               replay(t.genome, v.provenance) == v.genome);
    }
    for (const WalkStep& s : w.series) over += s.max_size > w.original_size;
    ok = ok && bad == 0 && w.series.size() == 51 && (!cap || over == 0);
    d << (cap ? "capped" : "uncapped") << ": " << bad << " unverified, final mean size "
      << fmt(w.series.back().mean_size) << " (original " << w.original_size << ")"
      << (cap ? ", " + std::to_string(over) + " steps over cap" : std::string()) << "; ";
  }
  return verdict(ok, d.str());
}

// 7 ------------------------------------------------------------------------
Result repair_witness() {
  const Target t = sorter("bubble");
  const TestSuite suite = sorting_suite();
  SeedOptions so;
  so.classes = {DefectClass::ExtraStatement};
  const SeededProgram s = seed_defects(t, suite, 1, kRecordedSeed, so);

  const RepairReport ex = proactive_repair(s.buggy, suite, s.defects, 5000, kRecordedSeed,
                                           RepairMode::ExhaustiveFirstOrder);
  const bool same_line =
      std::any_of(ex.repairs.begin(), ex.repairs.end(),
                  [](const Repair& r) { return r.locality == Locality::SameLine; });
  const RepairReport sampled =
      proactive_repair(s.buggy, suite, s.defects, 500, kRecordedSeed, RepairMode::Sampled);

  std::vector<DefectSpec> dummies = s.defects;
  for (DefectSpec& d : dummies) d.held_out = TestCase{"dummy", "1", "1 \n", 1};
  const RepairReport blind =
      proactive_repair(s.buggy, suite, dummies, 500, kRecordedSeed, RepairMode::Sampled);
  const bool blinded = blind.generation_digest == sampled.generation_digest;

  std::ostringstream d;
  d << "exhaustive fixed " << ex.unique_bugs_fixed << " (" << ex.repairs.size()
    << " repairs, same-line " << (same_line ? "yes" : "no") << "); sampled fixed "
    << sampled.unique_bugs_fixed << " in " << sampled.variants_generated
    << " variants; blinding " << (blinded ? "holds" : "broken");
  return verdict(ex.unique_bugs_fixed >= 1 && same_line && sampled.unique_bugs_fixed >= 1 &&
                     blinded,
                 d.str());
}

// 8 ------------------------------------------------------------------------
Result sweep_direction() {
  const SweepReport r = seeded_bug_sweep(sorter("bubble"), sorting_suite(),
                                         {1, 2, 3, 4, 5, 6, 7, 8}, 500, kRecordedSeed);
  std::ostringstream d;
  d << "fixed by n:";
  for (const SweepPoint& p : r.points) d << " " << p.bugs_fixed;
  d << "; r " << (r.pearson_r ? fmt(*r.pearson_r) : "undefined");
  return verdict(r.pearson_r && *r.pearson_r > 0.0, d.str());
}

// 9 ------------------------------------------------------------------------
Result determinism() {
#ifndef MUTRB_CLI
  return verdict(false, "command-line tool not built");
#else
  testing::TempDir dir;
  const std::string common = " --target " + corpus("bubble.mini").string() + " --suite " +
                             corpus("tests").string() + " --seed 11";
  const std::map<std::string, std::string> extra{
      {"measure", " --per-op-samples 30"},
      {"exhaustive", ""},
      {"coverage", ""},
      {"walk", " --population 6 --steps 4 --robustness-samples 5"},
      {"seed-bugs", " --n-defects 2"},
      {"repair", " --n-defects 2 --n-variants 60"},
      {"sweep", " --n-values 1,2,3 --n-variants 40"},
  };
  std::ostringstream d;
  bool ok = true;
  for (const char* cmd : kCommands) {
    std::vector<std::string> reports;
    for (int jobs : {1, 8}) {
      for (int rep = 0; rep < 2; ++rep) {
        const auto out = dir.path() / (std::string(cmd) + "-" + std::to_string(jobs) + "-" +
                                       std::to_string(rep) + ".json");
        const ProcessResult p =
            run_process(std::string(MUTRB_CLI) + " " + cmd + common + extra.at(cmd) +
                            " --jobs " + std::to_string(jobs) + " --output " + out.string(),
                        dir.path(), 600'000);
        if (p.exit_code != 0 || p.signal || p.timed_out) {
          ok = false;
          d << cmd << " exited " << p.exit_code << "; ";
          reports.push_back("");
          continue;
        }
        reports.push_back(read_text(out));
      }
    }
    const bool same = std::all_of(reports.begin(), reports.end(), [&](const std::string& r) {
      return !r.empty() && r == reports.front();
    });
    ok = ok && same;
    d << cmd << (same ? " identical" : " DIFFERS") << "; ";
  }
  return verdict(ok, d.str());
#endif
}

}  // namespace
}  // namespace mutrb

int main() {
  using namespace mutrb;
  const std::pair<const char*, std::function<Result()>> criteria[] = {
      {"formula fidelity", formula_fidelity},
      {"oracle equivalence", oracle_equivalence},
      {"nonzero robustness under full coverage", nonzero_robustness},
      {"comparator monotonicity", comparator_monotonicity},
      {"operator laws", operator_laws},
      {"walk soundness", walk_soundness},
      {"proactive repair witness", repair_witness},
      {"sweep direction", sweep_direction},
      {"determinism", determinism},
  };
  int failed = 0, index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Result o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::printf("%s %d %s (%.1fs): %s\n", o.pass ? "PASS" : "FAIL", index, name, secs,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
