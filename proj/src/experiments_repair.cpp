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

// Proactive repair. Variant generation is a separate function that never sees
// the defects, so held-out cases cannot influence which variants exist.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "experiments_internal.hpp"
#include "mutrb/parallel.hpp"

namespace mutrb {
namespace {

constexpr std::size_t kBatch = 256;

struct Candidate {
  std::optional<Genome> genome;
  std::string key;
};

/// Pulls mutations from `next` in fixed batches, keeps fresh neutral variants
/// in draw order until `want` are collected or `next` runs dry.
template <typename Source>
NeutralPool collect(const Target& target, const TestSuite& suite, std::size_t want,
                    Source next, int jobs) {
  NeutralPool pool;
  DedupLedger ledger;
  const std::string origin = canonical_key(target.genome);
  ledger.offer(origin);
  bool dry = false;
  while (pool.variants.size() < want && !dry) {
    std::vector<Mutation> batch;
    while (batch.size() < kBatch) {
      std::optional<Mutation> m = next();
      if (!m) {
        dry = true;
        break;
      }
      batch.push_back(*m);
    }
    auto cands = parallel_map<Candidate>(batch.size(), jobs, [&](std::size_t i) {
      Candidate c;
      c.genome = apply_mutation(target.genome, batch[i]);
      c.key = canonical_key(*c.genome);
      return c;
    });
    std::vector<std::size_t> fresh;
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (ledger.offer(cands[i].key)) fresh.push_back(i);
    }
    const auto neutral = parallel_map<char>(fresh.size(), jobs, [&](std::size_t j) {
      return static_cast<char>(
          target.evaluator->evaluate(*cands[fresh[j]].genome, suite).neutral());
    });
    std::size_t consumed = batch.size();
    for (std::size_t j = 0; j < fresh.size(); ++j) {
      if (!neutral[j]) continue;
      const std::size_t i = fresh[j];
      pool.variants.push_back(Variant{std::move(*cands[i].genome), {batch[i]}, origin});
      pool.keys.push_back(cands[i].key);
      if (pool.variants.size() == want) {
        consumed = i + 1;
        break;
      }
    }
    pool.attempts += consumed;
  }
  pool.stalled = pool.variants.size() < want;
  return pool;
}

std::set<SiteId> positions(const Variant& v) {
  std::set<SiteId> out;
  for (const Mutation& m : v.provenance) {
    out.insert(m.target);
    if (m.source) out.insert(*m.source);
  }
  return out;
}

}  // namespace

NeutralPool generate_neutral_variants(const Target& target, const TestSuite& suite,
                                      std::size_t n_variants, RepairMode mode,
                                      std::uint64_t seed, int jobs) {
  require_original_passes(target, suite);
  const std::vector<Site> sites = detail::covered_sites(target, suite);

  if (mode == RepairMode::ExhaustiveFirstOrder) {
    std::vector<Mutation> all;
    for (MutationKind k : {MutationKind::Delete, MutationKind::Swap, MutationKind::Copy}) {
      for (Mutation& m : enumerate_mutations(target.genome, sites, k)) {
        all.push_back(std::move(m));
      }
    }
    std::size_t at = 0;
    return collect(target, suite, n_variants, [&]() -> std::optional<Mutation> {
      if (at == all.size()) return std::nullopt;
      return all[at++];
    }, jobs);
  }

  Rng rng(seed);
  std::vector<detail::DistinctSampler> samplers;
  for (MutationKind k : kAllMutationKinds) samplers.emplace_back(target.genome, sites, k);
  return collect(target, suite, n_variants, [&]() -> std::optional<Mutation> {
    std::vector<detail::DistinctSampler*> live;
    for (auto& s : samplers) {
      if (!s.exhausted()) live.push_back(&s);
    }
    if (live.empty()) return std::nullopt;
    return live[rng.below(live.size())]->next(rng);
  }, jobs);
}

Locality classify_locality(const std::vector<LineSpan>& repair, LineSpan defect) {
  Locality best = Locality::Compensatory;
  for (const LineSpan& s : repair) {
    if (s.first <= defect.last && defect.first <= s.last) return Locality::SameLine;
    const std::size_t gap =
        s.last < defect.first ? defect.first - s.last : s.first - defect.last;
    if (gap <= static_cast<std::size_t>(kNearLines)) best = Locality::Near;
  }
  return best;
}

Locality classify_repair_locality(const Genome& buggy, const Mutation& repair,
                                  const DefectSpec& defect) {
  return classify_locality(mutation_spans(buggy, repair), defect.lines);
}

RepairReport score_repairs(const Target& buggy, const TestSuite& suite,
                           const std::vector<DefectSpec>& defects,
                           const NeutralPool& pool, int jobs) {
  RepairReport report;
  report.variants_generated = pool.variants.size();
  report.stalled = pool.stalled;
  report.generation_digest = detail::digest_of(pool.keys);

  const auto fixed = parallel_map<std::vector<std::size_t>>(
      pool.variants.size(), jobs, [&](std::size_t i) {
        std::vector<std::size_t> out;
        for (std::size_t d = 0; d < defects.size(); ++d) {
          const TestSuite one{{defects[d].held_out}, suite.comparator};
          if (buggy.evaluator->evaluate(pool.variants[i].genome, one).neutral()) {
            out.push_back(d);
          }
        }
        return out;
      });

  std::set<std::size_t> bugs;
  for (std::size_t i = 0; i < pool.variants.size(); ++i) {
    if (fixed[i].empty()) continue;
    Repair r;
    r.index = i;
    r.digest = pool.keys[i];
    r.mutation = pool.variants[i].provenance.front();
    r.fixed = fixed[i];
    for (std::size_t d : r.fixed) {
      bugs.insert(d);
      r.locality = std::min(r.locality,
                            classify_repair_locality(buggy.genome, r.mutation, defects[d]));
    }
    ++report.locality_counts[r.locality];
    if (!report.variants_to_first_fix) report.variants_to_first_fix = i + 1;
    report.repairs.push_back(std::move(r));
  }
  report.unique_bugs_fixed = bugs.size();
  report.bug_fix_variants = report.repairs.size();
  return report;
}

RepairReport proactive_repair(const Target& buggy, const TestSuite& suite,
                              const std::vector<DefectSpec>& defects,
                              std::size_t n_variants, std::uint64_t seed,
                              RepairMode mode, int jobs) {
  const NeutralPool pool =
      generate_neutral_variants(buggy, suite, n_variants, mode, seed, jobs);
  RepairReport report = score_repairs(buggy, suite, defects, pool, jobs);
  report.mode = mode;
  report.n_variants = n_variants;
  report.seed = seed;
  return report;
}

std::vector<std::size_t> select_distinct_positions(const NeutralPool& pool,
                                                   std::size_t count) {
  const std::size_t n = pool.variants.size();
  count = std::min(count, n);
  std::vector<std::set<SiteId>> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[i] = positions(pool.variants[i]);

  std::vector<std::size_t> picked;
  std::vector<char> taken(n, 0);
  std::set<SiteId> seen;
  while (picked.size() < count) {
    std::size_t best = n, best_gain = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      std::size_t gain = 0;
      for (SiteId s : pos[i]) gain += seen.count(s) ? 0 : 1;
      if (gain > best_gain) {
        best = i;
        best_gain = gain;
      }
    }
    if (best == n) break;
    taken[best] = 1;
    picked.push_back(best);
    seen.insert(pos[best].begin(), pos[best].end());
  }
  for (std::size_t i = 0; i < n && picked.size() < count; ++i) {
    if (!taken[i]) picked.push_back(i);
  }
  return picked;
}

SweepReport seeded_bug_sweep(const Target& target, const TestSuite& suite,
                             const std::vector<std::size_t>& n_values,
                             std::size_t n_variants, std::uint64_t seed,
                             const SweepOptions& options, int jobs) {
  if (n_values.empty()) throw ExperimentError("sweep needs at least one n value");
  for (std::size_t n : n_values) {
    if (n == 0) throw ExperimentError("sweep n values must be at least 1");
  }
  require_original_passes(target, suite);

  SweepReport report;
  report.n_variants = n_variants;
  report.mode = options.mode;
  report.seed = seed;
  std::vector<double> xs, ys;
  for (std::size_t n : n_values) {
    const SeededProgram seeded = seed_defects(
        target, suite, n, Rng::derive(Rng::derive(seed, 1), n), options.seeding, jobs);
    const NeutralPool candidates = generate_neutral_variants(
        seeded.buggy, suite, n_variants * options.pool_factor, options.mode,
        Rng::derive(Rng::derive(seed, 2), n), jobs);
    NeutralPool chosen;
    chosen.stalled = candidates.stalled;
    chosen.attempts = candidates.attempts;
    for (std::size_t i : select_distinct_positions(candidates, n_variants)) {
      chosen.variants.push_back(candidates.variants[i]);
      chosen.keys.push_back(candidates.keys[i]);
    }
    const RepairReport r = score_repairs(seeded.buggy, suite, seeded.defects, chosen, jobs);
    SweepPoint p;
    p.n_seeded = n;
    p.bugs_fixed = r.unique_bugs_fixed;
    p.variants_needed = r.variants_to_first_fix;
    p.bug_fix_variants = r.bug_fix_variants;
    p.variants_generated = r.variants_generated;
    report.points.push_back(p);
    xs.push_back(static_cast<double>(n));
    ys.push_back(static_cast<double>(p.bugs_fixed));
  }
  report.pearson_r = pearson(xs, ys);
  return report;
}

}  // namespace mutrb
