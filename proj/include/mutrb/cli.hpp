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

#ifndef MUTRB_CLI_HPP_
#define MUTRB_CLI_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "mutrb/experiments.hpp"

namespace mutrb {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitOriginalFails = 3;
inline constexpr int kExitExperiment = 4;

inline constexpr const char* kCommands[] = {"measure", "exhaustive", "coverage", "walk",
                                            "seed-bugs", "repair", "sweep"};

struct Config {
  std::string target;    // .mini or .lin file
  std::string suite;     // directory of <name>.in / <name>.out pairs
  std::string external;  // external target descriptor; replaces target and suite
  Comparator comparator = Comparator::Exact;
  Limits limits;
  std::size_t per_op_samples = 200;
  std::uint64_t enumeration_cap = kDefaultEnumerationCap;
  WalkOptions walk;
  std::size_t n_defects = 5;
  std::size_t n_variants = 5000;
  RepairMode mode = RepairMode::Sampled;
  SeedOptions seeding;
  std::vector<std::size_t> n_values{1, 2, 3, 4, 5, 6, 7, 8};
  std::size_t pool_factor = 2;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  std::string output;  // JSON report path; CSV goes next to it
};

using Setting = std::pair<std::string, std::string>;

/// Every configurable key, in canonical order.
const std::vector<std::string>& config_keys();

/// Parses and range-checks one dotted key. Throws ConfigError naming the key.
void apply_setting(Config& config, const std::string& key, const std::string& value);

/// Reads `key = value` lines ('#' starts a comment line).
std::vector<Setting> read_config_file(const std::filesystem::path& path);

/// Defaults, then the file (if any), then `overrides` in order. Requires a
/// seed and either a target with a suite or an external descriptor.
Config load_config(const std::optional<std::filesystem::path>& file,
                   const std::vector<Setting>& overrides);

/// Canonical key/value view of `config`, without jobs and output.
std::map<std::string, std::string> config_entries(const Config& config);

/// SHA-256 over the command and config_entries().
std::string config_digest(const std::string& command, const Config& config);

/// Runs one subcommand and writes its report. Returns the process exit code;
/// the summary line goes to `out`, diagnostics to `err`.
int run_command(const std::string& command, const Config& config, std::ostream& out,
                std::ostream& err);

}  // namespace mutrb

#endif  // MUTRB_CLI_HPP_
