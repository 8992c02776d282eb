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

#ifndef MUTRB_REPORT_HPP_
#define MUTRB_REPORT_HPP_

#include <map>
#include <string>

#include <json.hpp>

#include "mutrb/experiments.hpp"

namespace mutrb {

using Json = nlohmann::json;

/// Keys sorted, two-space indent, floats printed with six significant digits
/// ("%#.6g"), non-finite floats as null, trailing newline.
std::string canonical_json(const Json& value);

/// Six significant digits, as used in reports and CSV files.
std::string format_float(double value);

/// Inputs a report must carry to be reproducible.
struct Provenance {
  std::string command;
  std::uint64_t seed = 0;
  std::string config_digest;
  std::map<std::string, std::string> corpus_digests;  // label -> sha256
  Json config;  // the effective configuration
};

/// Wraps `body` with `schema` ("mutrb.<kind>/1") and the provenance fields.
Json envelope(const std::string& kind, const Provenance& provenance, Json body);

Json to_json(const RobustnessReport& report);
Json to_json(const WalkResult& result);
Json to_json(const DefectSpec& defect);
Json to_json(const SeededProgram& seeded);
Json to_json(const RepairReport& report);
Json to_json(const SweepReport& report);
Json to_json(const CoverageMap& coverage, const Genome& genome);

/// `step,mean_size,mean_mutrb`
std::string walk_csv(const WalkResult& result);
/// `n_seeded,bugs_fixed,variants_needed` (empty when nothing was fixed)
std::string sweep_csv(const SweepReport& report);

}  // namespace mutrb

#endif  // MUTRB_REPORT_HPP_
