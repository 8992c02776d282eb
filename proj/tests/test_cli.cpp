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

#include <fstream>
#include <sstream>

#include "mutrb/cli.hpp"
#include "mutrb/report.hpp"
#include "support.hpp"

namespace mutrb {
namespace {

using testing::TempDir;
using testing::corpus;
using testing::read_text;

std::vector<Setting> bubble(std::uint64_t seed) {
  return {{"target", corpus("bubble.mini").string()},
          {"suite", corpus("tests").string()},
          {"seed", std::to_string(seed)}};
}

TEST(Config, Defaults) {
  const Config c = load_config(std::nullopt, bubble(1));
  EXPECT_EQ(c.per_op_samples, 200u);
  EXPECT_EQ(c.walk.population, 100u);
  EXPECT_EQ(c.walk.steps, 250u);
  EXPECT_EQ(c.n_defects, 5u);
  EXPECT_EQ(c.n_variants, 5000u);
  EXPECT_EQ(c.comparator, Comparator::Exact);
  EXPECT_EQ(c.jobs, 1);
  EXPECT_EQ(c.limits.max_steps, 100000u);
}

TEST(Config, ZeroSamplesNamesTheField) {
  auto s = bubble(1);
  s.push_back({"per_op_samples", "0"});
  try {
    load_config(std::nullopt, s);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("per_op_samples"), std::string::npos);
  }
}

TEST(Config, UnknownKeyAndBadValuesRejected) {
  Config c;
  EXPECT_THROW(apply_setting(c, "per_op_sample", "3"), ConfigError);
  EXPECT_THROW(apply_setting(c, "jobs", "0"), ConfigError);
  EXPECT_THROW(apply_setting(c, "comparator", "fuzzy"), ConfigError);
  EXPECT_THROW(apply_setting(c, "walk.steps", "-1"), ConfigError);
  EXPECT_THROW(apply_setting(c, "sweep.n_values", "1,x"), ConfigError);
}

TEST(Config, SeedIsRequired) {
  EXPECT_THROW(load_config(std::nullopt, {{"target", "a.mini"}, {"suite", "t"}}), ConfigError);
}

TEST(Config, FlagOverridesFile) {
  TempDir dir;
  const auto file = dir.path() / "run.cfg";
  std::ofstream(file) << "# comment\nseed = 5\nper_op_samples = 17\n";
  auto s = bubble(9);
  const Config c = load_config(file, s);
  EXPECT_EQ(*c.seed, 9u);
  EXPECT_EQ(c.per_op_samples, 17u);
}

TEST(Config, DigestIgnoresJobsAndOutput) {
  Config a = load_config(std::nullopt, bubble(1));
  Config b = a;
  b.jobs = 8;
  b.output = "elsewhere.json";
  EXPECT_EQ(config_digest("measure", a), config_digest("measure", b));
  b.per_op_samples = 3;
  EXPECT_NE(config_digest("measure", a), config_digest("measure", b));
  EXPECT_NE(config_digest("measure", a), config_digest("walk", a));
}

TEST(Command, MeasureWritesEnvelope) {
  TempDir dir;
  auto s = bubble(7);
  s.push_back({"per_op_samples", "20"});
  s.push_back({"output", (dir.path() / "m.json").string()});
  std::ostringstream out, err;
  ASSERT_EQ(run_command("measure", load_config(std::nullopt, s), out, err), kExitOk)
      << err.str();
  const Json j = Json::parse(read_text(dir.path() / "m.json"));
  EXPECT_EQ(j["schema"], "mutrb.robustness/1");
  EXPECT_EQ(j["command"], "measure");
  EXPECT_EQ(j["seed"], 7);
  EXPECT_TRUE(j["corpus_digests"].contains("target"));
  EXPECT_TRUE(j["corpus_digests"].contains("suite"));
  const Json& r = j["result"];
  for (const char* op : {"copy", "delete", "swap"}) {
    EXPECT_LE(r["per_operator"][op]["unique_mutants"].get<int>(), 20);
  }
  EXPECT_GE(r["pooled_mutrb"].get<double>(), 0.0);
  EXPECT_NE(out.str().find("measure:"), std::string::npos);
}

TEST(Command, BrokenOriginalExitsThreeWithoutReport) {
  TempDir dir;
  const auto target = dir.path() / "broken.mini";
  std::ofstream(target) << "print 0;\n";
  const auto report = dir.path() / "r.json";
  std::vector<Setting> s{{"target", target.string()},
                         {"suite", corpus("tests").string()},
                         {"seed", "1"},
                         {"output", report.string()}};
  for (const char* cmd : {"measure", "walk", "repair"}) {
    std::ostringstream out, err;
    EXPECT_EQ(run_command(cmd, load_config(std::nullopt, s), out, err), kExitOriginalFails)
        << cmd;
    EXPECT_FALSE(std::filesystem::exists(report)) << cmd;
    EXPECT_FALSE(err.str().empty());
  }
}

TEST(Command, MissingTargetIsConfigError) {
  std::vector<Setting> s{{"target", "/nonexistent/x.mini"},
                         {"suite", corpus("tests").string()},
                         {"seed", "1"}};
  std::ostringstream out, err;
  EXPECT_EQ(run_command("measure", load_config(std::nullopt, s), out, err), kExitConfig);
}

TEST(Command, SweepIsByteIdenticalAcrossJobCounts) {
  TempDir dir;
  std::string reports[2];
  const int jobs[2] = {1, 4};
  for (int i = 0; i < 2; ++i) {
    auto s = bubble(3);
    s.push_back({"sweep.n_values", "1,2"});
    s.push_back({"repair.n_variants", "40"});
    s.push_back({"jobs", std::to_string(jobs[i])});
    const auto path = dir.path() / ("s" + std::to_string(i) + ".json");
    s.push_back({"output", path.string()});
    std::ostringstream out, err;
    ASSERT_EQ(run_command("sweep", load_config(std::nullopt, s), out, err), kExitOk)
        << err.str();
    reports[i] = read_text(path);
    EXPECT_TRUE(std::filesystem::exists(dir.path() / ("s" + std::to_string(i) + ".csv")));
  }
  EXPECT_EQ(reports[0], reports[1]);
}

TEST(CanonicalJson, SortedKeysAndFixedFloats) {
  const Json j = {{"b", 0.25}, {"a", Json::array({1, 2})}, {"c", 1.0 / 3.0}};
  EXPECT_EQ(canonical_json(j),
            "{\n  \"a\": [\n    1,\n    2\n  ],\n  \"b\": 0.250000,\n  \"c\": 0.333333\n}\n");
}

TEST(CanonicalJson, NonFiniteBecomesNull) {
  EXPECT_EQ(canonical_json(Json{{"x", std::nan("")}}), "{\n  \"x\": null\n}\n");
}

}  // namespace
}  // namespace mutrb
