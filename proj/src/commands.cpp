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

#include <algorithm>
#include <fstream>
#include <sstream>

#include "mutrb/cli.hpp"
#include "mutrb/digest.hpp"
#include "mutrb/external.hpp"
#include "mutrb/report.hpp"

namespace mutrb {
namespace {

namespace fs = std::filesystem;

std::string file_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string suite_digest(const TestSuite& suite) {
  std::string all;
  for (const TestCase& c : suite.cases) {
    all += c.name + '\0' + c.input + '\0' + c.expected_output + '\0';
  }
  return sha256_hex(all);
}

struct Loaded {
  Target target;
  TestSuite suite;
  std::map<std::string, std::string> digests;
};

Loaded load(const Config& config) {
  std::map<std::string, std::string> digests;
  if (!config.external.empty()) {
    const ExternalDescriptor d = load_external_descriptor(config.external);
    digests["descriptor"] = sha256_hex(file_bytes(config.external));
    digests["source"] = sha256_hex(file_bytes(d.source));
    TestSuite suite = external_suite(d, config.comparator);
    digests["suite"] = suite_digest(suite);
    return Loaded{load_external_target(d), std::move(suite), std::move(digests)};
  }
  std::optional<Target> target;
  try {
    target = load_hermetic_target(config.target, config.limits);
  } catch (const ParseError& e) {
    throw ConfigError("target " + config.target + ": " + e.what());
  }
  TestSuite suite = load_suite(config.suite, config.comparator);
  digests["target"] = sha256_hex(file_bytes(config.target));
  digests["suite"] = suite_digest(suite);
  return Loaded{std::move(*target), std::move(suite), std::move(digests)};
}

fs::path output_path(const std::string& command, const Config& config) {
  return config.output.empty() ? fs::path("mutrb-" + command + ".json")
                               : fs::path(config.output);
}

void write_file(const fs::path& path, const std::string& data) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << data;
  if (!out) throw Error("cannot write " + path.string());
}

Json config_json(const Config& config) {
  Json j = Json::object();
  for (const auto& [k, v] : config_entries(config)) j[k] = v;
  return j;
}

/// Checked against the visible suite before any experiment runs.
void gate(const Loaded& l) { require_original_passes(l.target, l.suite); }

std::string run(const std::string& command, const Config& config, const Loaded& l,
                const Provenance& prov, const fs::path& json_path, std::string* csv) {
  const std::uint64_t seed = *config.seed;
  const int jobs = config.jobs;
  std::ostringstream summary;

  if (command == "measure" || command == "exhaustive") {
    gate(l);
    RobustnessReport r =
        command == "measure"
            ? estimate_mutrb(l.target, l.suite, config.per_op_samples, config.comparator,
                             seed, jobs)
            : exhaustive_mutrb(l.target, l.suite, config.comparator,
                               config.enumeration_cap, jobs);
    r.seed = seed;
    write_file(json_path, canonical_json(envelope("robustness", prov, to_json(r))));
    summary << "pooled_mutrb=" << format_float(r.pooled_mutrb)
            << " ci95=" << format_float(r.ci95) << " unique=" << r.unique
            << " neutral=" << r.neutral;
  } else if (command == "coverage") {
    const CoverageMap c = l.target.evaluator->coverage(l.target.genome, l.suite);
    write_file(json_path, canonical_json(envelope("coverage", prov, to_json(c, l.target.genome))));
    summary << "covered=" << c.covered_count() << "/" << c.counts.size()
            << " fraction=" << format_float(c.covered_fraction());
  } else if (command == "walk") {
    gate(l);
    WalkResult w;
    std::string stalled;
    try {
      w = neutral_walk(l.target, l.suite, config.walk, seed, jobs);
    } catch (const WalkStalled& e) {
      w = e.partial();
      stalled = e.what();
    }
    Json body = to_json(w);
    body["stalled"] = stalled.empty() ? Json(nullptr) : Json(stalled);
    write_file(json_path, canonical_json(envelope("walk", prov, std::move(body))));
    *csv = walk_csv(w);
    if (!stalled.empty()) throw ExperimentError(stalled);
    const WalkStep& last = w.series.back();
    summary << "steps=" << last.step << " mean_size=" << format_float(last.mean_size)
            << " mean_mutrb=" << format_float(last.mean_mutrb);
  } else if (command == "seed-bugs") {
    gate(l);
    const SeededProgram s =
        seed_defects(l.target, l.suite, config.n_defects, seed, config.seeding, jobs);
    write_file(json_path, canonical_json(envelope("seeded", prov, to_json(s))));
    summary << "defects=" << s.defects.size();
  } else if (command == "repair") {
    gate(l);
    const SeededProgram s = seed_defects(l.target, l.suite, config.n_defects,
                                         Rng::derive(seed, 1), config.seeding, jobs);
    const RepairReport r = proactive_repair(s.buggy, l.suite, s.defects, config.n_variants,
                                            Rng::derive(seed, 2), config.mode, jobs);
    Json body = to_json(r);
    body["seeded"] = to_json(s);
    write_file(json_path, canonical_json(envelope("repair", prov, std::move(body))));
    summary << "unique_bugs_fixed=" << r.unique_bugs_fixed << "/" << s.defects.size()
            << " bug_fix_variants=" << r.bug_fix_variants
            << " variants_generated=" << r.variants_generated;
  } else if (command == "sweep") {
    gate(l);
    SweepOptions options;
    options.mode = config.mode;
    options.pool_factor = config.pool_factor;
    options.seeding = config.seeding;
    const SweepReport r = seeded_bug_sweep(l.target, l.suite, config.n_values,
                                           config.n_variants, seed, options, jobs);
    write_file(json_path, canonical_json(envelope("sweep", prov, to_json(r))));
    *csv = sweep_csv(r);
    summary << "points=" << r.points.size() << " pearson_r="
            << (r.pearson_r ? format_float(*r.pearson_r) : std::string("undefined"));
  } else {
    throw ConfigError("unknown command '" + command + "'");
  }
  return summary.str();
}

}  // namespace

int run_command(const std::string& command, const Config& config, std::ostream& out,
                std::ostream& err) {
  if (std::find(std::begin(kCommands), std::end(kCommands), command) == std::end(kCommands)) {
    err << "error: unknown command '" << command << "'\n";
    return kExitConfig;
  }
  const fs::path json_path = output_path(command, config);
  fs::path csv_path = json_path;
  csv_path.replace_extension(".csv");
  std::string csv;
  try {
    if (!config.seed) throw ConfigError("seed: a master seed is required");
    const Loaded l = load(config);
    Provenance prov;
    prov.command = command;
    prov.seed = *config.seed;
    prov.config_digest = config_digest(command, config);
    prov.corpus_digests = l.digests;
    prov.config = config_json(config);
    try {
      const std::string summary = run(command, config, l, prov, json_path, &csv);
      if (!csv.empty()) write_file(csv_path, csv);
      out << command << ": " << summary << "\n";
      return kExitOk;
    } catch (const ExperimentError&) {
      if (!csv.empty()) write_file(csv_path, csv);
      throw;
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const OriginalFailsError& e) {
    err << "error: " << e.what() << "\n";
    return kExitOriginalFails;
  } catch (const ExperimentError& e) {
    err << "experiment failed: " << e.what() << "\n";
    return kExitExperiment;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitExperiment;
  }
}

}  // namespace mutrb
