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

// Cumulative neutral walk. Step k+1 cycles over the members of step k, mutates
// one parent per attempt and keeps neutral children until the population is
// refilled. Attempts run in fixed-size batches and are accepted in attempt
// order, which keeps the walk independent of the worker count.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "experiments_internal.hpp"
#include "mutrb/parallel.hpp"

namespace mutrb {
namespace {

constexpr std::uint64_t kAttemptStream = 1;
constexpr std::uint64_t kStatsStream = 2;

struct MemberStats {
  std::size_t size = 0;
  double mutrb = 0.0;
  std::string key;
  std::vector<Site> sites;
};

MemberStats measure_member(const Target& target, const Genome& genome,
                           const TestSuite& suite, std::size_t samples, Rng rng) {
  MemberStats st;
  st.size = genome_size(genome);
  st.key = canonical_key(genome);
  st.sites = enumerate_sites(genome, target.evaluator->coverage(genome, suite));
  std::size_t valid = 0, neutral = 0;
  for (std::size_t i = 0; i < samples && !st.sites.empty(); ++i) {
    const MutationKind kind = kAllMutationKinds[i % 3];
    try {
      const Mutation m = sample_mutation(genome, st.sites, kind, rng);
      ++valid;
      if (target.evaluator->evaluate(apply_mutation(genome, m), suite).neutral()) {
        ++neutral;
      }
    } catch (const MutationError&) {
    }
  }
  st.mutrb = valid ? static_cast<double>(neutral) / valid : 0.0;
  return st;
}

}  // namespace

WalkResult neutral_walk(const Target& target, const TestSuite& suite,
                        const WalkOptions& options, std::uint64_t seed, int jobs) {
  if (options.population == 0) throw ExperimentError("walk population must be at least 1");
  require_original_passes(target, suite);

  WalkResult result;
  result.seed = seed;
  result.original_size = genome_size(target.genome);
  result.size_unit = std::string(size_unit(target.genome));
  const std::string origin = canonical_key(target.genome);
  const std::size_t pop = options.population;

  std::vector<Variant> members(pop, Variant{target.genome, {}, origin});
  std::vector<MemberStats> stats;

  const auto record = [&](std::size_t step) {
    const std::uint64_t stream = Rng::derive(Rng::derive(seed, kStatsStream), step);
    stats = parallel_map<MemberStats>(pop, jobs, [&](std::size_t i) {
      return measure_member(target, members[i].genome, suite,
                            options.robustness_samples, Rng(Rng::derive(stream, i)));
    });
    WalkStep ws;
    ws.step = step;
    for (const MemberStats& st : stats) {
      ws.mean_size += static_cast<double>(st.size);
      ws.mean_mutrb += st.mutrb;
      ws.max_size = std::max(ws.max_size, st.size);
      ws.population.push_back(st.key);
    }
    ws.mean_size /= static_cast<double>(pop);
    ws.mean_mutrb /= static_cast<double>(pop);
    result.series.push_back(std::move(ws));
  };

  record(0);
  const std::size_t budget = options.attempts_per_member * pop;
  for (std::size_t step = 1; step <= options.steps; ++step) {
    const std::uint64_t stream = Rng::derive(Rng::derive(seed, kAttemptStream), step);
    std::vector<Variant> next;
    std::size_t attempt = 0;
    while (next.size() < pop) {
      if (attempt >= budget) {
        result.final_population = members;
        throw WalkStalled("walk step " + std::to_string(step) + " accepted only " +
                              std::to_string(next.size()) + " of " +
                              std::to_string(pop) + " members in " +
                              std::to_string(budget) + " attempts",
                          std::move(result));
      }
      const std::size_t base = attempt;
      auto children = parallel_map<std::optional<Variant>>(pop, jobs, [&](std::size_t j) {
        const std::size_t a = base + j;
        const std::size_t parent = a % pop;
        Rng rng(Rng::derive(stream, a));
        const MutationKind kind = kAllMutationKinds[rng.below(3)];
        const Genome& pg = members[parent].genome;
        std::optional<Variant> out;
        if (stats[parent].sites.empty()) return out;
        Mutation m;
        try {
          m = sample_mutation(pg, stats[parent].sites, kind, rng);
        } catch (const MutationError&) {
          return out;
        }
        Genome child = apply_mutation(pg, m);
        if (options.size_cap && genome_size(child) > result.original_size) return out;
        if (!target.evaluator->evaluate(child, suite).neutral()) return out;
        std::vector<Mutation> prov = members[parent].provenance;
        prov.push_back(m);
        out.emplace(Variant{std::move(child), std::move(prov), origin});
        return out;
      });
      for (auto& c : children) {
        if (c && next.size() < pop) next.push_back(std::move(*c));
      }
      attempt += pop;
    }
    members = std::move(next);
    record(step);
  }
  result.final_population = std::move(members);
  return result;
}

}  // namespace mutrb
