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

#include "mutrb/genome.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>
#include <utility>

#include "mutrb/digest.hpp"
#include "mutrb/error.hpp"

namespace mutrb {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Collapses every whitespace run inside a line to one space.
std::string squeeze(std::string_view s) {
  std::string out;
  bool space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = true;
      continue;
    }
    if (space && !out.empty()) out.push_back(' ');
    space = false;
    out.push_back(c);
  }
  return out;
}

// Locates the statement with pre-order id `id` inside a mutable statement
// list. Returns the owning list and the position within it.
struct Slot {
  std::vector<Stmt>* list = nullptr;
  std::size_t pos = 0;
};

bool find_slot(std::vector<Stmt>& list, SiteId id, SiteId& counter, Slot& out) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (counter == id) {
      out = Slot{&list, i};
      return true;
    }
    ++counter;
    if (find_slot(list[i].body, id, counter, out)) return true;
    if (find_slot(list[i].orelse, id, counter, out)) return true;
  }
  return false;
}

Slot locate(std::vector<Stmt>& root, SiteId id) {
  SiteId counter = 0;
  Slot slot;
  if (!find_slot(root, id, counter, slot)) {
    throw MutationError("unknown site " + std::to_string(id));
  }
  return slot;
}

void require_site(const Genome& genome, SiteId id) {
  const bool ok = std::visit(
      overloaded{[&](const TreeGenome& g) { return id < g.site_count(); },
                 [&](const LinearGenome& g) { return g.is_site(id); }},
      genome);
  if (!ok) throw MutationError("unknown site " + std::to_string(id));
}

bool sites_nested(const Genome& genome, SiteId a, SiteId b) {
  if (a == b) return true;
  if (const auto* tree = std::get_if<TreeGenome>(&genome)) {
    return tree->nested(a, b);
  }
  return false;
}

// A program never becomes empty.
bool deletable(const Genome& genome, SiteId id) {
  if (const auto* tree = std::get_if<TreeGenome>(&genome)) {
    return tree->subtree_size(id) < tree->site_count();
  }
  return site_count(genome) > 1;
}

std::vector<Site> deletable_sites(const Genome& genome, const std::vector<Site>& sites) {
  std::vector<Site> out;
  for (const Site& s : sites) {
    if (deletable(genome, s.id)) out.push_back(s);
  }
  return out;
}

void strip_unreachable(std::vector<Stmt>& list) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    strip_unreachable(list[i].body);
    strip_unreachable(list[i].orelse);
    if (list[i].kind == StmtKind::Break || list[i].kind == StmtKind::Exit) {
      list.erase(list.begin() + static_cast<std::ptrdiff_t>(i) + 1, list.end());
      return;
    }
  }
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

std::string opcode(std::string_view line) {
  const auto end = line.find_first_of(" \t");
  return std::string(line.substr(0, end));
}

}  // namespace

// ---------------------------------------------------------------------------
// LinearGenome

LinearGenome::LinearGenome(std::vector<Instruction> instructions)
    : instructions_(std::move(instructions)) {
  for (std::size_t i = 0; i < instructions_.size(); ++i) {
    if (!instructions_[i].is_protected) {
      const int line = static_cast<int>(i) + 1;
      sites_.push_back(Site{i, LineSpan{line, line}});
    }
  }
}

LinearGenome parse_linear(std::string_view listing,
                          const std::vector<std::string>& protected_prefixes) {
  std::vector<Instruction> out;
  std::size_t start = 0;
  while (start <= listing.size()) {
    auto end = listing.find('\n', start);
    if (end == std::string_view::npos) end = listing.size();
    std::string line = trim(listing.substr(start, end - start));
    if (!line.empty()) {
      const bool prot = std::any_of(
          protected_prefixes.begin(), protected_prefixes.end(),
          [&](const std::string& p) { return !p.empty() && starts_with(line, p); });
      out.push_back(Instruction{std::move(line), prot});
    }
    start = end + 1;
  }
  if (out.empty()) throw ParseError(1, 1, "listing has no instructions");
  return LinearGenome(std::move(out));
}

std::string serialize(const LinearGenome& genome) {
  std::string out;
  for (const auto& ins : genome.instructions()) {
    out += ins.text;
    out.push_back('\n');
  }
  return out;
}

std::string serialize(const Genome& genome) {
  return std::visit([](const auto& g) { return serialize(g); }, genome);
}

const std::vector<Site>& sites_of(const Genome& genome) {
  return std::visit(
      [](const auto& g) -> const std::vector<Site>& { return g.sites(); },
      genome);
}

std::size_t site_count(const Genome& genome) { return sites_of(genome).size(); }

std::size_t genome_size(const Genome& genome) {
  return std::visit(
      overloaded{[](const TreeGenome& g) { return g.site_count(); },
                 [](const LinearGenome& g) { return g.instruction_count(); }},
      genome);
}

std::string_view size_unit(const Genome& genome) {
  return std::holds_alternative<TreeGenome>(genome) ? "statements"
                                                    : "instructions";
}

// ---------------------------------------------------------------------------
// Coverage

double CoverageMap::covered_fraction() const {
  if (counts.empty()) return 0.0;
  return static_cast<double>(covered_count()) /
         static_cast<double>(counts.size());
}

std::size_t CoverageMap::covered_count() const {
  return static_cast<std::size_t>(std::count_if(
      counts.begin(), counts.end(), [](const auto& kv) { return kv.second > 0; }));
}

CoverageMap full_coverage(const Genome& genome) {
  CoverageMap map;
  for (const Site& s : sites_of(genome)) map.counts[s.id] = 1;
  return map;
}

std::vector<Site> enumerate_sites(const Genome& genome,
                                  const CoverageMap& coverage) {
  const auto& sites = sites_of(genome);
  for (const auto& [id, count] : coverage.counts) {
    const bool known = std::visit(
        overloaded{[&](const TreeGenome& g) { return id < g.site_count(); },
                   [&](const LinearGenome& g) { return g.is_site(id); }},
        genome);
    if (!known) {
      throw CoverageError("coverage references unknown site " +
                          std::to_string(id));
    }
  }
  std::vector<Site> out;
  for (const Site& s : sites) {
    auto it = coverage.counts.find(s.id);
    if (it != coverage.counts.end() && it->second > 0) out.push_back(s);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Mutations

std::string_view to_string(MutationKind kind) {
  switch (kind) {
    case MutationKind::Copy: return "copy";
    case MutationKind::Delete: return "delete";
    case MutationKind::Swap: return "swap";
  }
  return "?";
}

MutationKind parse_mutation_kind(std::string_view name) {
  for (auto k : kAllMutationKinds) {
    if (to_string(k) == name) return k;
  }
  throw Error("unknown mutation kind '" + std::string(name) + "'");
}

std::string describe(const Mutation& m) {
  std::ostringstream os;
  os << to_string(m.kind) << '(';
  if (m.source) os << *m.source << ',';
  os << m.target << ')';
  return os.str();
}

std::uint64_t mutation_space_size(const Genome& genome,
                                  const std::vector<Site>& sites,
                                  MutationKind kind) {
  const std::uint64_t n = sites.size();
  switch (kind) {
    case MutationKind::Delete: return deletable_sites(genome, sites).size();
    case MutationKind::Copy: return n * n;
    case MutationKind::Swap: {
      std::uint64_t pairs = 0;
      for (std::size_t i = 0; i < sites.size(); ++i) {
        for (std::size_t j = i + 1; j < sites.size(); ++j) {
          if (!sites_nested(genome, sites[i].id, sites[j].id)) ++pairs;
        }
      }
      return pairs;
    }
  }
  return 0;
}

std::vector<Mutation> enumerate_mutations(const Genome& genome,
                                          const std::vector<Site>& sites,
                                          MutationKind kind) {
  std::vector<Mutation> out;
  switch (kind) {
    case MutationKind::Delete:
      for (const Site& s : deletable_sites(genome, sites)) {
        out.push_back(Mutation{kind, std::nullopt, s.id});
      }
      break;
    case MutationKind::Copy:
      for (const Site& src : sites) {
        for (const Site& dst : sites) out.push_back(Mutation{kind, src.id, dst.id});
      }
      break;
    case MutationKind::Swap:
      for (std::size_t i = 0; i < sites.size(); ++i) {
        for (std::size_t j = i + 1; j < sites.size(); ++j) {
          if (!sites_nested(genome, sites[i].id, sites[j].id)) {
            out.push_back(Mutation{kind, sites[i].id, sites[j].id});
          }
        }
      }
      break;
  }
  return out;
}

Mutation sample_mutation(const Genome& genome, const CoverageMap& coverage,
                         MutationKind kind, Rng& rng) {
  return sample_mutation(genome, enumerate_sites(genome, coverage), kind, rng);
}

Mutation sample_mutation(const Genome& genome, const std::vector<Site>& sites,
                         MutationKind kind, Rng& rng) {
  if (sites.empty()) throw MutationError("no covered sites to mutate");
  const auto pick = [&] { return sites[rng.below(sites.size())].id; };
  switch (kind) {
    case MutationKind::Delete: {
      const std::vector<Site> ok = deletable_sites(genome, sites);
      if (ok.empty()) throw MutationError("deleting any covered site empties the program");
      return Mutation{kind, std::nullopt, ok[rng.below(ok.size())].id};
    }
    case MutationKind::Copy: {
      const SiteId source = pick();
      return Mutation{kind, source, pick()};
    }
    case MutationKind::Swap: {
      if (sites.size() < 2) {
        throw MutationError("swap needs two covered sites");
      }
      // Rejection over ordered pairs is uniform over unordered eligible
      // pairs. Fall back to enumeration when eligible pairs are rare.
      for (int attempt = 0; attempt < 64; ++attempt) {
        SiteId a = pick();
        SiteId b = pick();
        if (sites_nested(genome, a, b)) continue;
        if (a > b) std::swap(a, b);
        return Mutation{kind, a, b};
      }
      const auto all = enumerate_mutations(genome, sites, kind);
      if (all.empty()) {
        throw MutationError("no pair of covered sites is swappable");
      }
      return all[rng.below(all.size())];
    }
  }
  throw MutationError("unknown mutation kind");
}

TreeGenome apply_mutation(const TreeGenome& genome, const Mutation& m) {
  const auto require = [&](SiteId id) {
    if (id >= genome.site_count()) {
      throw MutationError("unknown site " + std::to_string(id));
    }
  };
  require(m.target);
  std::vector<Stmt> root = genome.statements();
  switch (m.kind) {
    case MutationKind::Delete: {
      Slot slot = locate(root, m.target);
      slot.list->erase(slot.list->begin() + static_cast<std::ptrdiff_t>(slot.pos));
      if (root.empty()) {
        throw MutationError("deleting the only statement leaves an empty program");
      }
      break;
    }
    case MutationKind::Copy: {
      if (!m.source) throw MutationError("copy requires a source site");
      require(*m.source);
      Stmt duplicate = genome.statement(*m.source);
      Slot slot = locate(root, m.target);
      Stmt& target = (*slot.list)[slot.pos];
      if (target.compound()) {
        target.body.insert(target.body.begin(), std::move(duplicate));
      } else {
        slot.list->insert(slot.list->begin() + static_cast<std::ptrdiff_t>(slot.pos) + 1,
                          std::move(duplicate));
      }
      break;
    }
    case MutationKind::Swap: {
      if (!m.source) throw MutationError("swap requires two sites");
      require(*m.source);
      if (genome.nested(*m.source, m.target)) {
        throw MutationError("swap sites " + std::to_string(*m.source) + " and " +
                            std::to_string(m.target) + " are nested or equal");
      }
      Slot a = locate(root, *m.source);
      Slot b = locate(root, m.target);
      std::swap((*a.list)[a.pos], (*b.list)[b.pos]);
      break;
    }
  }
  return TreeGenome(std::move(root));
}

LinearGenome apply_mutation(const LinearGenome& genome, const Mutation& m) {
  if (!genome.is_site(m.target)) {
    throw MutationError("unknown site " + std::to_string(m.target));
  }
  std::vector<Instruction> ins = genome.instructions();
  switch (m.kind) {
    case MutationKind::Delete:
      if (genome.site_count() == 1) {
        throw MutationError("deleting the only instruction leaves an empty program");
      }
      ins.erase(ins.begin() + static_cast<std::ptrdiff_t>(m.target));
      break;
    case MutationKind::Copy:
      if (!m.source || !genome.is_site(*m.source)) {
        throw MutationError("copy requires a valid source site");
      }
      ins.insert(ins.begin() + static_cast<std::ptrdiff_t>(m.target) + 1,
                 genome.instructions()[*m.source]);
      break;
    case MutationKind::Swap:
      if (!m.source || !genome.is_site(*m.source)) {
        throw MutationError("swap requires two valid sites");
      }
      if (*m.source == m.target) {
        throw MutationError("swap sites must differ");
      }
      std::swap(ins[*m.source], ins[m.target]);
      break;
  }
  return LinearGenome(std::move(ins));
}

Genome apply_mutation(const Genome& genome, const Mutation& mutation) {
  return std::visit(
      [&](const auto& g) -> Genome { return apply_mutation(g, mutation); },
      genome);
}

Genome replay(const Genome& origin, const std::vector<Mutation>& provenance) {
  Genome g = origin;
  for (const Mutation& m : provenance) g = apply_mutation(g, m);
  return g;
}

std::vector<LineSpan> mutation_spans(const Genome& genome, const Mutation& m) {
  require_site(genome, m.target);
  const auto span_of = [&](SiteId id) {
    if (const auto* tree = std::get_if<TreeGenome>(&genome)) {
      return tree->sites()[id].span;
    }
    const int line = static_cast<int>(id) + 1;
    return LineSpan{line, line};
  };
  switch (m.kind) {
    case MutationKind::Delete:
      return {span_of(m.target)};
    case MutationKind::Copy: {
      const LineSpan t = span_of(m.target);
      return {LineSpan{t.first, t.first}};
    }
    case MutationKind::Swap:
      if (!m.source) throw MutationError("swap requires two sites");
      require_site(genome, *m.source);
      return {span_of(*m.source), span_of(m.target)};
  }
  return {};
}

std::string canonical_text(const Genome& genome) {
  std::string text;
  if (const auto* tree = std::get_if<TreeGenome>(&genome)) {
    std::vector<Stmt> live = tree->statements();
    strip_unreachable(live);
    text = TreeGenome(std::move(live)).text();
  } else {
    const auto& ins = std::get<LinearGenome>(genome).instructions();
    bool dead = false;
    for (const auto& i : ins) {
      const std::string op = opcode(i.text);
      if (op == ".label") dead = false;
      if (dead) continue;
      text += i.text;
      text.push_back('\n');
      if (op == "jmp" || op == "halt") dead = true;
    }
  }
  std::string out;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    out += squeeze(std::string_view(text).substr(start, end - start));
    out.push_back('\n');
    start = end + 1;
  }
  return out;
}

std::string canonical_key(const Genome& genome) {
  return sha256_hex(canonical_text(genome));
}

}  // namespace mutrb
