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

#include "mutrb/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace mutrb {
namespace {

void write(std::ostringstream& os, const Json& v, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close(2 * depth, ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [key, item] : v.items()) {  // std::map order: sorted
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(key).dump() << ": ";
        write(os, item, depth + 1);
      }
      os << '\n' << close << '}';
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        write(os, v[i], depth + 1);
      }
      os << '\n' << close << ']';
      return;
    }
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      os << (std::isfinite(d) ? format_float(d) : "null");
      return;
    }
    default:
      os << v.dump();
  }
}

Json optional_count(const std::optional<std::size_t>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json mutation_json(const Mutation& m) {
  Json j{{"kind", to_string(m.kind)}, {"target", m.target}};
  j["source"] = m.source ? Json(*m.source) : Json(nullptr);
  return j;
}

}  // namespace

std::string format_float(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.6g", value);
  return buf;
}

std::string canonical_json(const Json& value) {
  std::ostringstream os;
  write(os, value, 0);
  os << '\n';
  return os.str();
}

Json envelope(const std::string& kind, const Provenance& p, Json body) {
  Json j{{"schema", "mutrb." + kind + "/1"},
         {"command", p.command},
         {"seed", p.seed},
         {"config_digest", p.config_digest},
         {"corpus_digests", p.corpus_digests},
         {"config", p.config},
         {"result", std::move(body)}};
  return j;
}

Json to_json(const RobustnessReport& r) {
  Json ops = Json::object();
  for (const auto& [kind, s] : r.per_operator) {
    ops[std::string(to_string(kind))] = {
        {"attempts", s.attempts}, {"unique_mutants", s.unique},
        {"neutral", s.neutral},   {"mutrb", s.mutrb},
        {"space", s.space},       {"unique_space", s.unique_space},
        {"skipped", s.skipped}};
  }
  return {{"per_operator", ops},
          {"unique_mutants", r.unique},
          {"neutral", r.neutral},
          {"pooled_mutrb", r.pooled_mutrb},
          {"ci95", r.ci95},
          {"comparator", to_string(r.comparator)},
          {"coverage_fraction", r.coverage_fraction},
          {"seed", r.seed},
          {"exhaustive", r.exhaustive},
          {"notes", r.notes}};
}

Json to_json(const WalkResult& w) {
  Json series = Json::array();
  for (const WalkStep& s : w.series) {
    series.push_back({{"step", s.step},
                      {"mean_size", s.mean_size},
                      {"mean_mutrb", s.mean_mutrb},
                      {"max_size", s.max_size},
                      {"population", s.population}});
  }
  Json members = Json::array();
  for (const Variant& v : w.final_population) {
    Json prov = Json::array();
    for (const Mutation& m : v.provenance) prov.push_back(mutation_json(m));
    members.push_back({{"digest", canonical_key(v.genome)}, {"provenance", prov}});
  }
  return {{"series", series},
          {"final_population", members},
          {"original_size", w.original_size},
          {"size_unit", w.size_unit},
          {"seed", w.seed}};
}

Json to_json(const DefectSpec& d) {
  return {{"class", to_string(d.cls)},
          {"site", d.site},
          {"lines", {d.lines.first, d.lines.last}},
          {"description", d.description},
          {"held_out",
           {{"name", d.held_out.name},
            {"input", d.held_out.input},
            {"expected_output", d.held_out.expected_output}}}};
}

Json to_json(const SeededProgram& s) {
  Json defects = Json::array();
  for (const DefectSpec& d : s.defects) defects.push_back(to_json(d));
  return {{"buggy_source", serialize(s.buggy.genome)},
          {"buggy_digest", canonical_key(s.buggy.genome)},
          {"defects", defects}};
}

Json to_json(const RepairReport& r) {
  Json repairs = Json::array();
  for (const Repair& x : r.repairs) {
    repairs.push_back({{"index", x.index},
                       {"digest", x.digest},
                       {"mutation", mutation_json(x.mutation)},
                       {"defects_fixed", x.fixed},
                       {"locality", to_string(x.locality)}});
  }
  Json locality = Json::object();
  for (Locality l : {Locality::SameLine, Locality::Near, Locality::Compensatory}) {
    const auto it = r.locality_counts.find(l);
    locality[std::string(to_string(l))] = it == r.locality_counts.end() ? 0 : it->second;
  }
  return {{"mode", to_string(r.mode)},
          {"n_variants", r.n_variants},
          {"variants_generated", r.variants_generated},
          {"stalled", r.stalled},
          {"repairs", repairs},
          {"unique_bugs_fixed", r.unique_bugs_fixed},
          {"bug_fix_variants", r.bug_fix_variants},
          {"variants_to_first_fix", optional_count(r.variants_to_first_fix)},
          {"locality_counts", locality},
          {"generation_digest", r.generation_digest},
          {"seed", r.seed}};
}

Json to_json(const SweepReport& r) {
  Json points = Json::array();
  for (const SweepPoint& p : r.points) {
    points.push_back({{"n_seeded", p.n_seeded},
                      {"bugs_fixed", p.bugs_fixed},
                      {"variants_needed", optional_count(p.variants_needed)},
                      {"bug_fix_variants", p.bug_fix_variants},
                      {"variants_generated", p.variants_generated}});
  }
  return {{"points", points},
          {"pearson_r", r.pearson_r ? Json(*r.pearson_r) : Json(nullptr)},
          {"n_variants", r.n_variants},
          {"mode", to_string(r.mode)},
          {"seed", r.seed}};
}

Json to_json(const CoverageMap& c, const Genome& genome) {
  Json sites = Json::array();
  const auto& all = sites_of(genome);
  for (const auto& [id, count] : c.counts) {
    const auto it = std::find_if(all.begin(), all.end(),
                                 [&](const Site& s) { return s.id == id; });
    const LineSpan span = it == all.end() ? LineSpan{} : it->span;
    sites.push_back({{"site", id}, {"count", count}, {"lines", {span.first, span.last}}});
  }
  return {{"sites", sites},
          {"covered", c.covered_count()},
          {"total", c.counts.size()},
          {"covered_fraction", c.covered_fraction()}};
}

std::string walk_csv(const WalkResult& w) {
  std::string out = "step,mean_size,mean_mutrb\n";
  for (const WalkStep& s : w.series) {
    out += std::to_string(s.step) + ',' + format_float(s.mean_size) + ',' +
           format_float(s.mean_mutrb) + '\n';
  }
  return out;
}

std::string sweep_csv(const SweepReport& r) {
  std::string out = "n_seeded,bugs_fixed,variants_needed\n";
  for (const SweepPoint& p : r.points) {
    out += std::to_string(p.n_seeded) + ',' + std::to_string(p.bugs_fixed) + ',' +
           (p.variants_needed ? std::to_string(*p.variants_needed) : "") + '\n';
  }
  return out;
}

}  // namespace mutrb
