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

#include <charconv>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "mutrb/cli.hpp"
#include "mutrb/digest.hpp"

namespace mutrb {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::uint64_t parse_u64(const std::string& key, const std::string& value,
                        std::uint64_t min = 1,
                        std::uint64_t max = std::numeric_limits<std::uint64_t>::max()) {
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || end != value.data() + value.size() || value.empty()) {
    throw ConfigError(key + ": expected a non-negative integer, got '" + value + "'");
  }
  if (v < min || v > max) {
    throw ConfigError(key + ": " + value + " is out of range [" + std::to_string(min) +
                      ", " + std::to_string(max) + "]");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "on" || value == "1") return true;
  if (value == "false" || value == "off" || value == "0") return false;
  throw ConfigError(key + ": expected true/false, got '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::istringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
  return out;
}

struct Field {
  std::string key;
  std::function<void(Config&, const std::string&, const std::string&)> set;
  std::function<std::string(const Config&)> get;
};

template <typename T>
Field count(std::string key, T Config::*member, std::uint64_t min = 1) {
  return {std::move(key),
          [member, min](Config& c, const std::string& k, const std::string& v) {
            c.*member = static_cast<T>(parse_u64(k, v, min));
          },
          [member](const Config& c) { return std::to_string(c.*member); }};
}

template <typename S, typename T>
Field nested(std::string key, S Config::*outer, T S::*inner, std::uint64_t min = 1) {
  return {std::move(key),
          [outer, inner, min](Config& c, const std::string& k, const std::string& v) {
            (c.*outer).*inner = static_cast<T>(parse_u64(k, v, min));
          },
          [outer, inner](const Config& c) { return std::to_string((c.*outer).*inner); }};
}

Field text(std::string key, std::string Config::*member) {
  return {std::move(key),
          [member](Config& c, const std::string&, const std::string& v) { c.*member = v; },
          [member](const Config& c) { return c.*member; }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> all = [] {
    std::vector<Field> f;
    f.push_back(text("target", &Config::target));
    f.push_back(text("suite", &Config::suite));
    f.push_back(text("external", &Config::external));
    f.push_back({"comparator",
                 [](Config& c, const std::string& k, const std::string& v) {
                   try {
                     c.comparator = parse_comparator(v);
                   } catch (const Error& e) {
                     throw ConfigError(k + ": " + e.what());
                   }
                 },
                 [](const Config& c) { return std::string(to_string(c.comparator)); }});
    f.push_back(nested("limits.max_steps", &Config::limits, &Limits::max_steps));
    f.push_back(nested("limits.max_output", &Config::limits, &Limits::max_output));
    f.push_back(nested("limits.max_input_reads", &Config::limits, &Limits::max_input_reads));
    f.push_back(count("per_op_samples", &Config::per_op_samples));
    f.push_back(count("enumeration_cap", &Config::enumeration_cap));
    f.push_back(nested("walk.population", &Config::walk, &WalkOptions::population));
    f.push_back(nested("walk.steps", &Config::walk, &WalkOptions::steps));
    f.push_back({"walk.size_cap",
                 [](Config& c, const std::string& k, const std::string& v) {
                   c.walk.size_cap = parse_bool(k, v);
                 },
                 [](const Config& c) { return std::string(c.walk.size_cap ? "true" : "false"); }});
    f.push_back(nested("walk.robustness_samples", &Config::walk,
                       &WalkOptions::robustness_samples));
    f.push_back(nested("walk.attempts_per_member", &Config::walk,
                       &WalkOptions::attempts_per_member));
    f.push_back(count("repair.n_defects", &Config::n_defects));
    f.push_back(count("repair.n_variants", &Config::n_variants));
    f.push_back({"repair.mode",
                 [](Config& c, const std::string& k, const std::string& v) {
                   try {
                     c.mode = parse_repair_mode(v);
                   } catch (const Error& e) {
                     throw ConfigError(k + ": " + e.what());
                   }
                 },
                 [](const Config& c) { return std::string(to_string(c.mode)); }});
    f.push_back({"seeding.classes",
                 [](Config& c, const std::string& k, const std::string& v) {
                   std::vector<DefectClass> classes;
                   try {
                     for (const auto& item : split_list(v)) {
                       classes.push_back(parse_defect_class(item));
                     }
                   } catch (const Error& e) {
                     throw ConfigError(k + ": " + e.what());
                   }
                   if (classes.empty()) throw ConfigError(k + ": needs at least one class");
                   c.seeding.classes = std::move(classes);
                 },
                 [](const Config& c) {
                   std::vector<std::string> names;
                   for (DefectClass d : c.seeding.classes) names.emplace_back(to_string(d));
                   return join(names);
                 }});
    f.push_back(nested("seeding.attempts_per_defect", &Config::seeding,
                       &SeedOptions::attempts_per_defect));
    f.push_back(nested("seeding.restarts", &Config::seeding, &SeedOptions::restarts, 0));
    f.push_back(nested("seeding.enumerated_inputs", &Config::seeding,
                       &SeedOptions::enumerated_inputs, 0));
    f.push_back(nested("seeding.random_inputs", &Config::seeding,
                       &SeedOptions::random_inputs, 0));
    f.push_back(nested("seeding.max_random_length", &Config::seeding,
                       &SeedOptions::max_random_length));
    f.push_back({"sweep.n_values",
                 [](Config& c, const std::string& k, const std::string& v) {
                   std::vector<std::size_t> ns;
                   for (const auto& item : split_list(v)) ns.push_back(parse_u64(k, item));
                   if (ns.empty()) throw ConfigError(k + ": needs at least one value");
                   c.n_values = std::move(ns);
                 },
                 [](const Config& c) {
                   std::vector<std::string> items;
                   for (std::size_t n : c.n_values) items.push_back(std::to_string(n));
                   return join(items);
                 }});
    f.push_back(count("sweep.pool_factor", &Config::pool_factor));
    f.push_back({"seed",
                 [](Config& c, const std::string& k, const std::string& v) {
                   c.seed = parse_u64(k, v, 0);
                 },
                 [](const Config& c) { return c.seed ? std::to_string(*c.seed) : ""; }});
    f.push_back({"jobs",
                 [](Config& c, const std::string& k, const std::string& v) {
                   c.jobs = static_cast<int>(parse_u64(k, v, 1, 1024));
                 },
                 [](const Config& c) { return std::to_string(c.jobs); }});
    f.push_back(text("output", &Config::output));
    return f;
  }();
  return all;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const Field& f : fields()) k.push_back(f.key);
    return k;
  }();
  return keys;
}

void apply_setting(Config& config, const std::string& key, const std::string& value) {
  for (const Field& f : fields()) {
    if (f.key == key) {
      f.set(config, key, trim(value));
      return;
    }
  }
  throw ConfigError("unknown config key '" + key + "'");
}

std::vector<Setting> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::vector<Setting> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ":" + std::to_string(lineno) +
                        ": expected key = value");
    }
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

Config load_config(const std::optional<std::filesystem::path>& file,
                   const std::vector<Setting>& overrides) {
  Config config;
  if (file) {
    for (const auto& [k, v] : read_config_file(*file)) apply_setting(config, k, v);
  }
  for (const auto& [k, v] : overrides) apply_setting(config, k, v);

  if (!config.seed) throw ConfigError("seed: a master seed is required");
  if (config.external.empty()) {
    if (config.target.empty()) throw ConfigError("target: a target program is required");
    if (config.suite.empty()) throw ConfigError("suite: a suite directory is required");
  } else if (!config.target.empty() || !config.suite.empty()) {
    throw ConfigError("external: cannot be combined with target or suite");
  }
  return config;
}

std::map<std::string, std::string> config_entries(const Config& config) {
  std::map<std::string, std::string> out;
  for (const Field& f : fields()) {
    if (f.key == "jobs" || f.key == "output") continue;
    out[f.key] = f.get(config);
  }
  return out;
}

std::string config_digest(const std::string& command, const Config& config) {
  std::string all = "command=" + command + "\n";
  for (const auto& [k, v] : config_entries(config)) all += k + "=" + v + "\n";
  return sha256_hex(all);
}

}  // namespace mutrb
