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

#ifndef MUTRB_SRC_EXPERIMENTS_INTERNAL_HPP_
#define MUTRB_SRC_EXPERIMENTS_INTERNAL_HPP_

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "mutrb/experiments.hpp"

namespace mutrb::detail {

/// Draws distinct mutations of one kind uniformly without replacement.
/// Rejection sampling while fewer than half have been drawn, then a shuffled
/// list of the remainder.
class DistinctSampler {
 public:
  DistinctSampler(const Genome& genome, std::vector<Site> sites, MutationKind kind);

  std::uint64_t space() const { return space_; }
  bool exhausted() const { return drawn_ >= space_; }
  std::optional<Mutation> next(Rng& rng);

 private:
  const Genome& genome_;
  std::vector<Site> sites_;
  MutationKind kind_;
  std::uint64_t space_;
  std::uint64_t drawn_ = 0;
  std::set<Mutation> seen_;
  std::vector<Mutation> rest_;
  bool shuffled_ = false;
};

/// Copy of `suite` judged with `comparator`.
TestSuite with_comparator(const TestSuite& suite, Comparator comparator);

/// Covered sites of `genome`; throws ExperimentError when there are none.
std::vector<Site> covered_sites(const Target& target, const TestSuite& suite,
                                CoverageMap* coverage = nullptr);

/// SHA-256 over the concatenation of `keys`, one per line.
std::string digest_of(const std::vector<std::string>& keys);

/// Fisher-Yates with Rng::below.
template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace mutrb::detail

#endif  // MUTRB_SRC_EXPERIMENTS_INTERNAL_HPP_
