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

#include "experiments_internal.hpp"
#include "mutrb/digest.hpp"

namespace mutrb {
namespace detail {

DistinctSampler::DistinctSampler(const Genome& genome, std::vector<Site> sites,
                                 MutationKind kind)
    : genome_(genome),
      sites_(std::move(sites)),
      kind_(kind),
      space_(mutation_space_size(genome, sites_, kind)) {}

std::optional<Mutation> DistinctSampler::next(Rng& rng) {
  if (exhausted()) return std::nullopt;
  if (!shuffled_ && 2 * drawn_ < space_) {
    for (;;) {
      Mutation m = sample_mutation(genome_, sites_, kind_, rng);
      if (seen_.insert(m).second) {
        ++drawn_;
        return m;
      }
    }
  }
  if (!shuffled_) {
    for (Mutation& m : enumerate_mutations(genome_, sites_, kind_)) {
      if (!seen_.count(m)) rest_.push_back(std::move(m));
    }
    shuffle(rest_, rng);
    shuffled_ = true;
  }
  Mutation m = rest_.back();
  rest_.pop_back();
  ++drawn_;
  return m;
}

TestSuite with_comparator(const TestSuite& suite, Comparator comparator) {
  TestSuite out = suite;
  out.comparator = comparator;
  return out;
}

std::vector<Site> covered_sites(const Target& target, const TestSuite& suite,
                                CoverageMap* coverage) {
  CoverageMap map = target.evaluator->coverage(target.genome, suite);
  std::vector<Site> sites = enumerate_sites(target.genome, map);
  if (sites.empty()) throw ExperimentError("the suite covers no mutable site");
  if (coverage) *coverage = std::move(map);
  return sites;
}

std::string digest_of(const std::vector<std::string>& keys) {
  std::string all;
  for (const std::string& k : keys) {
    all += k;
    all += '\n';
  }
  return sha256_hex(all);
}

}  // namespace detail

double wald_ci95(double p, std::uint64_t n) {
  if (n == 0) return 0.0;
  return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

RobustnessReport robustness_from_records(const std::vector<MutantRecord>& records,
                                         Comparator comparator) {
  RobustnessReport r;
  r.comparator = comparator;
  for (const MutantRecord& rec : records) {
    OperatorStats& s = r.per_operator[rec.kind];
    ++s.attempts;
    ++s.unique;
    if (rec.neutral) ++s.neutral;
  }
  for (auto& [kind, s] : r.per_operator) {
    s.mutrb = s.unique ? static_cast<double>(s.neutral) / s.unique : 0.0;
    r.unique += s.unique;
    r.neutral += s.neutral;
  }
  r.pooled_mutrb = r.unique ? static_cast<double>(r.neutral) / r.unique : 0.0;
  r.ci95 = wald_ci95(r.pooled_mutrb, r.unique);
  return r;
}

std::optional<double> pearson(const std::vector<double>& xs,
                              const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) return std::nullopt;
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

std::string_view to_string(DefectClass cls) {
  switch (cls) {
    case DefectClass::MissingConditionalClause: return "missing-conditional-clause";
    case DefectClass::ExtraStatement: return "extra-statement";
    case DefectClass::ConstantForVariable: return "constant-for-variable";
    case DefectClass::WrongParameter: return "wrong-parameter";
  }
  return "?";
}

DefectClass parse_defect_class(std::string_view name) {
  for (DefectClass c : kAllDefectClasses) {
    if (to_string(c) == name) return c;
  }
  throw Error("unknown defect class '" + std::string(name) + "'");
}

std::string_view to_string(RepairMode mode) {
  switch (mode) {
    case RepairMode::Sampled: return "sampled";
    case RepairMode::ExhaustiveFirstOrder: return "exhaustive-first-order";
  }
  return "?";
}

RepairMode parse_repair_mode(std::string_view name) {
  for (RepairMode m : {RepairMode::Sampled, RepairMode::ExhaustiveFirstOrder}) {
    if (to_string(m) == name) return m;
  }
  throw Error("unknown repair mode '" + std::string(name) +
              "' (expected sampled or exhaustive-first-order)");
}

std::string_view to_string(Locality locality) {
  switch (locality) {
    case Locality::SameLine: return "same-line";
    case Locality::Near: return "near";
    case Locality::Compensatory: return "compensatory";
  }
  return "?";
}

}  // namespace mutrb
