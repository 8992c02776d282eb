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

// Structured results cross the boundary as canonical JSON text; the Python
// package decodes them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mutrb/cli.hpp"
#include "mutrb/report.hpp"

namespace py = pybind11;
using namespace mutrb;

namespace {

Target target_from(const std::string& path, std::uint64_t max_steps) {
  Limits limits;
  limits.max_steps = max_steps;
  return load_hermetic_target(path, limits);
}

std::string json(const Json& j) { return canonical_json(j); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "mutrb core bindings";

  const py::handle base = py::register_exception<Error>(m, "MutrbError");
  py::register_exception<ConfigError>(m, "ConfigError", base);
  py::register_exception<OriginalFailsError>(m, "OriginalFailsError", base);
  py::register_exception<ExperimentError>(m, "ExperimentError", base);
  py::register_exception<MutationError>(m, "MutationError", base);
  py::register_exception<ParseError>(m, "ParseError", base);

  m.def("canonical_key", [](const std::string& source) {
    return canonical_key(Genome(parse_tree(source)));
  }, py::arg("source"));

  m.def("lower", [](const std::string& source) {
    return serialize(lower_to_linear(parse_tree(source)));
  }, py::arg("source"));

  m.def("mutate", [](const std::string& source, const std::string& kind, std::uint64_t seed) {
    const Genome g = parse_tree(source);
    Rng rng(seed);
    const Mutation mu = sample_mutation(g, full_coverage(g), parse_mutation_kind(kind), rng);
    return py::make_tuple(describe(mu), serialize(apply_mutation(g, mu)));
  }, py::arg("source"), py::arg("kind"), py::arg("seed"));

  m.def("evaluate", [](const std::string& target, const std::string& suite,
                       const std::string& comparator, std::uint64_t max_steps) {
    const Target t = target_from(target, max_steps);
    const Verdict v = t.evaluator->evaluate(
        t.genome, load_suite(suite, parse_comparator(comparator)));
    return py::make_tuple(std::string(to_string(v.outcome)), v.first_failure, v.cases_run);
  }, py::arg("target"), py::arg("suite"), py::arg("comparator") = "exact",
     py::arg("max_steps") = Limits{}.max_steps);

  m.def("mutrb_from_records", [](const std::vector<std::pair<std::string, bool>>& records) {
    std::vector<MutantRecord> recs;
    for (const auto& [kind, neutral] : records) {
      recs.push_back(MutantRecord{parse_mutation_kind(kind), neutral});
    }
    return json(to_json(robustness_from_records(recs, Comparator::Exact)));
  }, py::arg("records"));

  m.def("estimate_mutrb", [](const std::string& target, const std::string& suite,
                             std::size_t per_op_samples, const std::string& comparator,
                             std::uint64_t seed, int jobs) {
    py::gil_scoped_release release;
    const Comparator c = parse_comparator(comparator);
    return json(to_json(
        estimate_mutrb(target_from(target, Limits{}.max_steps), load_suite(suite, c),
                       per_op_samples, c, seed, jobs)));
  }, py::arg("target"), py::arg("suite"), py::arg("per_op_samples") = 200,
     py::arg("comparator") = "exact", py::arg("seed"), py::arg("jobs") = 1);

  m.def("exhaustive_mutrb", [](const std::string& target, const std::string& suite,
                               const std::string& comparator, int jobs) {
    py::gil_scoped_release release;
    const Comparator c = parse_comparator(comparator);
    return json(to_json(exhaustive_mutrb(target_from(target, Limits{}.max_steps),
                                         load_suite(suite, c), c,
                                         kDefaultEnumerationCap, jobs)));
  }, py::arg("target"), py::arg("suite"), py::arg("comparator") = "exact",
     py::arg("jobs") = 1);

  m.def("neutral_walk", [](const std::string& target, const std::string& suite,
                           std::size_t population, std::size_t steps, bool size_cap,
                           std::uint64_t seed, int jobs) {
    py::gil_scoped_release release;
    WalkOptions o;
    o.population = population;
    o.steps = steps;
    o.size_cap = size_cap;
    return json(to_json(neutral_walk(target_from(target, Limits{}.max_steps),
                                     load_suite(suite, Comparator::Exact), o, seed, jobs)));
  }, py::arg("target"), py::arg("suite"), py::arg("population"), py::arg("steps"),
     py::arg("size_cap") = false, py::arg("seed"), py::arg("jobs") = 1);

  m.def("seed_defects", [](const std::string& target, const std::string& suite,
                           std::size_t n, std::uint64_t seed, int jobs) {
    py::gil_scoped_release release;
    return json(to_json(seed_defects(target_from(target, Limits{}.max_steps),
                                     load_suite(suite, Comparator::Exact), n, seed, {},
                                     jobs)));
  }, py::arg("target"), py::arg("suite"), py::arg("n"), py::arg("seed"),
     py::arg("jobs") = 1);

  m.def("run_command", [](const std::string& command,
                          const std::vector<std::pair<std::string, std::string>>& settings) {
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release release;
      try {
        code = run_command(command, load_config(std::nullopt, settings), out, err);
      } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        code = kExitConfig;
      }
    }
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("command"), py::arg("settings"));
}
