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

// Replays of published tallies through the library's own arithmetic.

#include <gtest/gtest.h>

#include <cmath>

#include "mutrb/experiments.hpp"
#include "mutrb/report.hpp"
#include "support.hpp"

namespace mutrb {
namespace {

using testing::fixture;
using testing::read_csv;
using testing::read_records;

double percent(const RobustnessReport& r) { return std::round(r.pooled_mutrb * 1000.0) / 10.0; }

TEST(Formula, TenMutantsThreeNeutral) {
  const RobustnessReport r =
      robustness_from_records(read_records(fixture("formula_10_3.csv")), Comparator::Exact);
  EXPECT_EQ(r.unique, 10u);
  EXPECT_EQ(r.neutral, 3u);
  EXPECT_EQ(format_float(r.pooled_mutrb), "0.300000");
}

TEST(BubbleTally, SourceLevel) {
  const RobustnessReport r = robustness_from_records(
      read_records(fixture("bubble_tally_source.csv")), Comparator::Exact);
  EXPECT_EQ(r.unique, 600u);
  EXPECT_EQ(r.neutral, 164u);
  EXPECT_DOUBLE_EQ(percent(r), 27.3);
}

TEST(BubbleTally, AssemblyLevel) {
  const RobustnessReport r = robustness_from_records(
      read_records(fixture("bubble_tally_listing.csv")), Comparator::Exact);
  EXPECT_EQ(r.unique, 600u);
  EXPECT_EQ(r.neutral, 154u);
  EXPECT_DOUBLE_EQ(percent(r), 25.7);
}

TEST(RepairTally, AveragesPerProgram) {
  const auto rows = read_csv(fixture("repair_tally.csv"));
  ASSERT_EQ(rows.size(), 11u);
  double fixed = 0, fixes = 0;
  for (const auto& row : rows) {
    ASSERT_EQ(row.size(), 4u);
    EXPECT_EQ(row[2], "5");
    fixed += std::stod(row[1]);
    fixes += std::stod(row[3]);
  }
  const double mean_fixed = fixed / rows.size();
  const double mean_fixes = fixes / rows.size();
  EXPECT_NEAR(mean_fixed, 1.09, 0.005);
  EXPECT_NEAR(mean_fixed, 1.0, 0.1);
  EXPECT_NEAR(mean_fixes, 18.8, 0.05);
}

TEST(SweepTally, CorrelationOfFixesWithSeededBugs) {
  std::vector<double> n, fixed;
  for (const auto& row : read_csv(fixture("sweep_potion.csv"))) {
    n.push_back(std::stod(row[0]));
    fixed.push_back(std::stod(row[1]));
  }
  ASSERT_EQ(n.size(), 15u);
  const auto r = pearson(n, fixed);
  ASSERT_TRUE(r);
  EXPECT_NEAR(*r, 0.95, 0.02);
}

}  // namespace
}  // namespace mutrb
