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

// mutrb: command-line front end. Every experiment subcommand shares one flag
// set; each flag is shorthand for a config key and overrides the file value.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mutrb/cli.hpp"

namespace {

struct FlagSpec {
  const char* flag;
  const char* key;
  const char* help;
};

constexpr FlagSpec kFlags[] = {
    {"--target", "target", "program file (.mini or .lin)"},
    {"--suite", "suite", "suite directory of <name>.in/<name>.out pairs"},
    {"--external", "external", "external target descriptor"},
    {"--comparator", "comparator", "exact, whitespace-insensitive or crash-only"},
    {"--seed", "seed", "master RNG seed (required)"},
    {"--jobs", "jobs", "worker threads"},
    {"--output", "output", "JSON report path"},
    {"--max-steps", "limits.max_steps", "interpreter step limit per case"},
    {"--per-op-samples", "per_op_samples", "unique mutants per operator"},
    {"--enumeration-cap", "enumeration_cap", "largest mutation space to enumerate"},
    {"--population", "walk.population", "walk population size"},
    {"--steps", "walk.steps", "walk steps"},
    {"--robustness-samples", "walk.robustness_samples", "mutants sampled per member"},
    {"--n-defects", "repair.n_defects", "defects to seed"},
    {"--n-variants", "repair.n_variants", "neutral variants to generate"},
    {"--mode", "repair.mode", "sampled or exhaustive-first-order"},
    {"--n-values", "sweep.n_values", "comma-separated defect counts"},
};

int lower(const std::string& in, const std::string& out) {
  try {
    std::ifstream f(in);
    if (!f) throw mutrb::ConfigError("cannot read " + in);
    std::stringstream ss;
    ss << f.rdbuf();
    const std::string listing =
        mutrb::serialize(mutrb::lower_to_linear(mutrb::parse_tree(ss.str())));
    if (out.empty() || out == "-") {
      std::cout << listing;
    } else {
      std::ofstream o(out);
      o << listing;
      if (!o) throw mutrb::ConfigError("cannot write " + out);
    }
    return mutrb::kExitOk;
  } catch (const mutrb::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return mutrb::kExitConfig;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mutational robustness experiments"};
  app.require_subcommand(1);

  struct Parsed {
    CLI::App* sub = nullptr;
    std::string config_file;
    std::vector<std::string> values = std::vector<std::string>(std::size(kFlags));
    std::vector<std::string> sets;
    bool size_cap = false;
  };
  std::vector<Parsed> parsed(std::size(mutrb::kCommands));

  static const std::map<std::string, std::string> kAbout = {
      {"measure", "estimate MutRB by sampling"},
      {"exhaustive", "exact MutRB over every mutation of covered sites"},
      {"coverage", "statement coverage of the suite"},
      {"walk", "cumulative neutral walk"},
      {"seed-bugs", "seed defects with held-out tests"},
      {"repair", "seed defects, then search neutral variants for repairs"},
      {"sweep", "repair rate against number of seeded defects"},
  };
  for (std::size_t c = 0; c < parsed.size(); ++c) {
    const std::string name = mutrb::kCommands[c];
    Parsed& p = parsed[c];
    p.sub = app.add_subcommand(name, kAbout.at(name));
    p.sub->add_option("--config", p.config_file, "key = value config file");
    for (std::size_t i = 0; i < std::size(kFlags); ++i) {
      p.sub->add_option(kFlags[i].flag, p.values[i], kFlags[i].help);
    }
    p.sub->add_flag("--size-cap", p.size_cap, "walk: reject children larger than the original");
    p.sub->add_option("--set", p.sets, "extra key=value setting (repeatable)");
  }

  std::string lower_in, lower_out;
  CLI::App* lower_cmd = app.add_subcommand("lower", "lower a program to a stack listing");
  lower_cmd->add_option("input", lower_in, "mini-language program")->required();
  lower_cmd->add_option("-o,--output", lower_out, "listing path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : mutrb::kExitConfig;
  }
  if (lower_cmd->parsed()) return lower(lower_in, lower_out);

  for (std::size_t c = 0; c < parsed.size(); ++c) {
    const Parsed& p = parsed[c];
    if (!p.sub->parsed()) continue;
    std::vector<mutrb::Setting> overrides;
    for (std::size_t i = 0; i < std::size(kFlags); ++i) {
      if (p.sub->count(kFlags[i].flag)) overrides.emplace_back(kFlags[i].key, p.values[i]);
    }
    if (p.size_cap) overrides.emplace_back("walk.size_cap", "true");
    for (const std::string& s : p.sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) {
        std::cerr << "config error: --set expects key=value, got '" << s << "'\n";
        return mutrb::kExitConfig;
      }
      overrides.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }
    mutrb::Config config;
    try {
      config = mutrb::load_config(
          p.config_file.empty() ? std::nullopt
                                : std::optional<std::filesystem::path>(p.config_file),
          overrides);
    } catch (const mutrb::ConfigError& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return mutrb::kExitConfig;
    }
    return mutrb::run_command(mutrb::kCommands[c], config, std::cout, std::cerr);
  }
  return mutrb::kExitConfig;
}
