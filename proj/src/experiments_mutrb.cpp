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

#include <cmath>
#include <string>
#include <unordered_set>
#include <vector>

#include "experiments_internal.hpp"
#include "mutrb/parallel.hpp"

namespace mutrb {
namespace {

using detail::DistinctSampler;

std::uint64_t total_space(const Genome& genome, const std::vector<Site>& sites) {
  std::uint64_t total = 0;
  for (MutationKind k : kAllMutationKinds) total += mutation_space_size(genome, sites, k);
  return total;
}

/// Canonical keys of every mutation in `mutations`, computed in parallel.
std::vector<std::string> keys_of(const Genome& genome,
                                 const std::vector<Mutation>& mutations, int jobs) {
  return parallel_map<std::string>(mutations.size(), jobs, [&](std::size_t i) {
    return canonical_key(apply_mutation(genome, mutations[i]));
  });
}

std::uint64_t count_distinct(const std::vector<std::string>& keys) {
  return std::unordered_set<std::string>(keys.begin(), keys.end()).size();
}

void finish_operator(OperatorStats& s) {
  s.mutrb = s.unique ? static_cast<double>(s.neutral) / s.unique : 0.0;
}

}  // namespace

RobustnessReport estimate_mutrb(const Target& target, const TestSuite& suite,
                                std::size_t per_op_samples, Comparator comparator,
                                std::uint64_t seed, int jobs) {
  if (per_op_samples == 0) throw ExperimentError("per_op_samples must be at least 1");
  const TestSuite judged = detail::with_comparator(suite, comparator);
  require_original_passes(target, judged);
  CoverageMap coverage;
  const std::vector<Site> sites = detail::covered_sites(target, judged, &coverage);
  const bool enumerable = total_space(target.genome, sites) <= kDefaultEnumerationCap;

  RobustnessReport report;
  report.comparator = comparator;
  report.coverage_fraction = coverage.covered_fraction();
  report.seed = seed;

  std::uint64_t index = 0;
  for (MutationKind kind : kAllMutationKinds) {
    OperatorStats& s = report.per_operator[kind];
    Rng rng(Rng::derive(seed, index++));
    DistinctSampler sampler(target.genome, sites, kind);
    s.space = sampler.space();
    if (s.space == 0) {
      s.skipped = true;
      report.notes.push_back(std::string(to_string(kind)) +
                             ": no valid mutation over covered sites");
      continue;
    }

    DedupLedger ledger;
    std::vector<Genome> mutants;
    while (mutants.size() < per_op_samples) {
      const std::optional<Mutation> m = sampler.next(rng);
      if (!m) break;
      ++s.attempts;
      Genome g = apply_mutation(target.genome, *m);
      if (dedup(ledger, g)) mutants.push_back(std::move(g));
    }
    const auto verdicts = parallel_map<char>(mutants.size(), jobs, [&](std::size_t i) {
      return static_cast<char>(target.evaluator->evaluate(mutants[i], judged).neutral());
    });
    s.unique = mutants.size();
    for (char v : verdicts) s.neutral += v ? 1 : 0;
    finish_operator(s);

    if (sampler.exhausted()) {
      s.unique_space = s.unique;
    } else if (enumerable) {
      s.unique_space = count_distinct(
          keys_of(target.genome, enumerate_mutations(target.genome, sites, kind), jobs));
    } else {
      s.unique_space = s.space;
    }
    report.unique += s.unique;
    report.neutral += s.neutral;
  }
  if (!enumerable) {
    report.notes.push_back("mutation space above enumeration cap; operators weighted "
                           "by raw mutation counts");
  }

  // Stratified estimate: each operator weighted by its share of unique mutants.
  double weight_total = 0;
  for (const auto& [kind, s] : report.per_operator) {
    if (s.unique) weight_total += static_cast<double>(s.unique_space);
  }
  double pooled = 0, variance = 0;
  for (const auto& [kind, s] : report.per_operator) {
    if (!s.unique) continue;
    const double w = static_cast<double>(s.unique_space) / weight_total;
    pooled += w * s.mutrb;
    variance += w * w * s.mutrb * (1.0 - s.mutrb) / static_cast<double>(s.unique);
  }
  report.pooled_mutrb = pooled;
  report.ci95 = 1.96 * std::sqrt(variance);
  return report;
}

RobustnessReport exhaustive_mutrb(const Target& target, const TestSuite& suite,
                                  Comparator comparator, std::uint64_t cap, int jobs) {
  const TestSuite judged = detail::with_comparator(suite, comparator);
  require_original_passes(target, judged);
  CoverageMap coverage;
  const std::vector<Site> sites = detail::covered_sites(target, judged, &coverage);
  const std::uint64_t total = total_space(target.genome, sites);
  if (total > cap) {
    throw ExperimentError("mutation space of " + std::to_string(total) +
                          " exceeds the enumeration cap of " + std::to_string(cap));
  }

  RobustnessReport report;
  report.comparator = comparator;
  report.coverage_fraction = coverage.covered_fraction();
  report.exhaustive = true;

  for (MutationKind kind : kAllMutationKinds) {
    OperatorStats& s = report.per_operator[kind];
    const std::vector<Mutation> all = enumerate_mutations(target.genome, sites, kind);
    s.space = s.attempts = all.size();
    if (all.empty()) {
      s.skipped = true;
      report.notes.push_back(std::string(to_string(kind)) +
                             ": no valid mutation over covered sites");
      continue;
    }
    const std::vector<std::string> keys = keys_of(target.genome, all, jobs);
    std::unordered_set<std::string> seen;
    std::vector<std::size_t> firsts;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (seen.insert(keys[i]).second) firsts.push_back(i);
    }
    const auto verdicts = parallel_map<char>(firsts.size(), jobs, [&](std::size_t i) {
      const Genome g = apply_mutation(target.genome, all[firsts[i]]);
      return static_cast<char>(target.evaluator->evaluate(g, judged).neutral());
    });
    s.unique = s.unique_space = firsts.size();
    for (char v : verdicts) s.neutral += v ? 1 : 0;
    finish_operator(s);
    report.unique += s.unique;
    report.neutral += s.neutral;
  }
  report.pooled_mutrb =
      report.unique ? static_cast<double>(report.neutral) / report.unique : 0.0;
  return report;
}

}  // namespace mutrb
