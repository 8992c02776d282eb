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
#include <memory>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "experiments_internal.hpp"
#include "mutrb/parallel.hpp"

namespace mutrb {
namespace {

constexpr std::int64_t kMinValue = -9;
constexpr std::int64_t kMaxValue = 9;
constexpr std::size_t kMaxEnumeratedLength = 6;
constexpr std::size_t kSearchBatch = 64;

using Input = std::vector<std::int64_t>;

Stmt* find_site(std::vector<Stmt>& list, SiteId wanted, SiteId& next) {
  for (Stmt& s : list) {
    if (next++ == wanted) return &s;
    if (Stmt* hit = find_site(s.body, wanted, next)) return hit;
    if (Stmt* hit = find_site(s.orelse, wanted, next)) return hit;
  }
  return nullptr;
}

void collect(Expr& e, std::vector<Expr*>& out) {
  out.push_back(&e);
  for (Expr& a : e.args) collect(a, out);
}

/// Expressions owned by `s` itself (not by nested statements).
std::vector<Expr*> own_exprs(Stmt& s) {
  std::vector<Expr*> out;
  if (s.index) collect(*s.index, out);
  if (s.value) collect(*s.value, out);
  return out;
}

void scalar_names(const std::vector<Stmt>& list, std::set<std::string>& out) {
  const auto visit = [&](const Expr& e, const auto& self) -> void {
    if (e.kind == ExprKind::Var) out.insert(e.name);
    for (const Expr& a : e.args) self(a, self);
  };
  for (const Stmt& s : list) {
    if ((s.kind == StmtKind::Assign || s.kind == StmtKind::Read) && !s.index) {
      out.insert(s.target);
    }
    if (s.index) visit(*s.index, visit);
    if (s.value) visit(*s.value, visit);
    scalar_names(s.body, out);
    scalar_names(s.orelse, out);
  }
}

template <typename Pred>
std::vector<Expr*> filter(const std::vector<Expr*>& all, Pred pred) {
  std::vector<Expr*> out;
  for (Expr* e : all) {
    if (pred(*e)) out.push_back(e);
  }
  return out;
}

std::string line_of(const TreeGenome& g, SiteId id) {
  return "line " + std::to_string(g.sites()[id].span.first);
}

std::string input_text(const Input& x) {
  std::string s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(x[i]);
  }
  return s + "\n";
}

/// Candidate inputs: every vector up to kMaxEnumeratedLength over
/// [kMinValue, kMaxValue] in length order (capped), then random vectors.
std::vector<Input> search_inputs(const SeedOptions& options, std::uint64_t seed) {
  std::vector<Input> out;
  const std::size_t base = static_cast<std::size_t>(kMaxValue - kMinValue + 1);
  for (std::size_t len = 0; len <= kMaxEnumeratedLength; ++len) {
    std::vector<std::size_t> digits(len, 0);
    for (;;) {
      if (out.size() >= options.enumerated_inputs) break;
      Input x(len);
      for (std::size_t i = 0; i < len; ++i) {
        x[i] = kMinValue + static_cast<std::int64_t>(digits[i]);
      }
      out.push_back(std::move(x));
      std::size_t i = len;
      while (i > 0 && ++digits[i - 1] == base) digits[--i] = 0;
      if (i == 0) break;
    }
  }
  Rng rng(seed);
  for (std::size_t r = 0; r < options.random_inputs; ++r) {
    Input x(static_cast<std::size_t>(rng.below(options.max_random_length + 1)));
    for (auto& v : x) v = rng.between(kMinValue, kMaxValue);
    out.push_back(std::move(x));
  }
  return out;
}

struct Oracle {
  std::vector<Input> inputs;
  std::vector<std::optional<std::string>> expected;  // original output, if it completed
  Limits search;  // step budget while searching; hits are re-checked with full limits
};

constexpr std::uint64_t kSearchStepFactor = 10;
constexpr std::uint64_t kMinSearchSteps = 10000;

}  // namespace

std::optional<TreeGenome> inject_defect(const TreeGenome& genome, DefectClass cls,
                                        SiteId site, Rng& rng,
                                        std::string* description,
                                        SiteId* defect_site,
                                        const std::vector<Site>* sources) {
  if (site >= genome.site_count()) return std::nullopt;
  std::string desc;
  SiteId where = site;

  if (cls == DefectClass::ExtraStatement) {
    const std::vector<Site>& pool = sources ? *sources : genome.sites();
    if (pool.empty()) return std::nullopt;
    const SiteId src = pool[rng.below(pool.size())].id;
    TreeGenome out = apply_mutation(
        genome, Mutation{MutationKind::Copy, src, site});
    where = genome.statement(site).compound() ? site + 1
                                              : site + genome.subtree_size(site);
    desc = "copied the statement at " + line_of(genome, src) + " to " +
           line_of(out, where);
    if (description) *description = desc;
    if (defect_site) *defect_site = where;
    return out;
  }

  std::vector<Stmt> stmts = genome.statements();
  SiteId counter = 0;
  Stmt* s = find_site(stmts, site, counter);
  const std::vector<Expr*> exprs = own_exprs(*s);

  switch (cls) {
    case DefectClass::MissingConditionalClause: {
      if (s->kind != StmtKind::If && s->kind != StmtKind::While) return std::nullopt;
      const auto clauses = filter(exprs, [](const Expr& e) {
        return e.kind == ExprKind::Binary &&
               (e.binary == BinaryOp::And || e.binary == BinaryOp::Or);
      });
      if (clauses.empty()) return std::nullopt;
      Expr* e = clauses[rng.below(clauses.size())];
      Expr kept = e->args[rng.below(2)];
      *e = std::move(kept);
      desc = "dropped a clause from the guard at " + line_of(genome, site);
      break;
    }
    case DefectClass::ConstantForVariable: {
      const auto vars = filter(exprs, [](const Expr& e) { return e.kind == ExprKind::Var; });
      if (vars.empty()) return std::nullopt;
      Expr* e = vars[rng.below(vars.size())];
      const std::int64_t v = rng.between(-1, 3);
      desc = "replaced " + e->name + " with " + std::to_string(v) + " at " +
             line_of(genome, site);
      *e = Expr::integer(v);
      break;
    }
    case DefectClass::WrongParameter: {
      const auto operands = filter(exprs, [](const Expr& e) {
        return e.kind == ExprKind::Int || e.kind == ExprKind::Var;
      });
      if (operands.empty()) return std::nullopt;
      Expr* e = operands[rng.below(operands.size())];
      if (e->kind == ExprKind::Int) {
        const std::int64_t before = e->value;
        e->value += rng.below(2) ? 1 : -1;
        desc = "changed literal " + std::to_string(before) + " to " +
               std::to_string(e->value) + " at " + line_of(genome, site);
      } else {
        std::set<std::string> names;
        scalar_names(genome.statements(), names);
        names.erase(e->name);
        if (names.empty()) return std::nullopt;
        auto it = names.begin();
        std::advance(it, static_cast<long>(rng.below(names.size())));
        desc = "replaced " + e->name + " with " + *it + " at " + line_of(genome, site);
        *e = Expr::variable(*it);
      }
      break;
    }
    case DefectClass::ExtraStatement:
      break;
  }
  if (description) *description = desc;
  if (defect_site) *defect_site = where;
  return TreeGenome(std::move(stmts));
}

namespace {

/// One attempt at stacking `n` defects; nullopt when some stage dead-ends.
std::optional<SeededProgram> stack_defects(const Target& target, const TestSuite& suite,
                                           const TreeGenome& original, std::size_t n,
                                           std::uint64_t stream, const Oracle& oracle,
                                           const SeedOptions& options, const Limits& limits,
                                           int jobs) {
  TreeGenome current = original;
  std::vector<DefectSpec> defects;

  for (std::size_t i = 0; i < n; ++i) {
    Rng rng(Rng::derive(stream, i));
    bool placed = false;
    // Whether the current program passes each search input; filled lazily.
    std::vector<signed char> prev_passes(oracle.inputs.size(), -1);
    const Genome cur_genome = current;
    const auto prev_exe = compile(cur_genome);
    const std::vector<Site> sites =
        enumerate_sites(cur_genome, target.evaluator->coverage(cur_genome, suite));
    if (sites.empty()) throw ExperimentError("the suite covers no statement");
    std::unordered_set<std::string> rejected;
    for (std::size_t attempt = 0; attempt < options.attempts_per_defect && !placed;
         ++attempt) {
      const DefectClass cls = options.classes[rng.below(options.classes.size())];
      const SiteId site = sites[rng.below(sites.size())].id;
      std::string desc;
      SiteId where = site;
      std::optional<TreeGenome> cand;
      try {
        cand = inject_defect(current, cls, site, rng, &desc, &where, &sites);
      } catch (const MutationError&) {
        continue;
      }
      if (!cand || cand->text() == current.text()) continue;
      if (!rejected.insert(cand->text()).second) continue;
      const Genome cand_genome = *cand;
      if (!target.evaluator->evaluate(cand_genome, suite).neutral()) continue;

      const auto cand_exe = compile(cand_genome);
      bool masks = false;
      for (const DefectSpec& d : defects) {
        const Execution run = cand_exe->run(parse_input(d.held_out.input), limits);
        if (passes(run, d.held_out, suite.comparator)) masks = true;
      }
      if (masks) continue;

      std::optional<std::size_t> found;
      for (std::size_t base = 0; base < oracle.inputs.size() && !found;
           base += kSearchBatch) {
        const std::size_t count = std::min(kSearchBatch, oracle.inputs.size() - base);
        const auto hits = parallel_map<char>(count, jobs, [&](std::size_t j) {
          const std::size_t k = base + j;
          if (!oracle.expected[k]) return char{0};
          const TestCase probe{"", "", *oracle.expected[k], 1};
          const Execution run = cand_exe->run(oracle.inputs[k], oracle.search);
          if (passes(run, probe, suite.comparator)) return char{0};
          if (prev_passes[k] < 0) {
            prev_passes[k] = passes(prev_exe->run(oracle.inputs[k], oracle.search), probe,
                                    suite.comparator);
          }
          if (!prev_passes[k]) return char{0};
          if (run.status == ExecStatus::StepLimit) {
            return static_cast<char>(!passes(cand_exe->run(oracle.inputs[k], limits),
                                             probe, suite.comparator));
          }
          return char{1};
        });
        for (std::size_t j = 0; j < count; ++j) {
          if (hits[j]) {
            found = base + j;
            break;
          }
        }
      }
      if (!found) continue;

      if (cls == DefectClass::ExtraStatement) {
        const std::size_t inserted = cand->subtree_size(where);
        for (DefectSpec& d : defects) {
          if (d.site >= where) d.site += inserted;
        }
      }
      DefectSpec spec;
      spec.cls = cls;
      spec.site = where;
      spec.description = desc;
      spec.held_out = TestCase{"held-out-" + std::to_string(i + 1),
                               input_text(oracle.inputs[*found]),
                               *oracle.expected[*found], 1};
      defects.push_back(std::move(spec));
      current = std::move(*cand);
      placed = true;
    }
    if (!placed) return std::nullopt;
  }

  for (DefectSpec& d : defects) d.lines = current.sites()[d.site].span;
  return SeededProgram{Target{Genome(std::move(current)), target.evaluator},
                       std::move(defects)};
}

}  // namespace

SeededProgram seed_defects(const Target& target, const TestSuite& suite,
                           std::size_t n, std::uint64_t seed,
                           const SeedOptions& options, int jobs) {
  const auto* original = std::get_if<TreeGenome>(&target.genome);
  const Limits* limits = target.evaluator->hermetic_limits();
  if (!original || !limits) {
    throw ExperimentError("defect seeding needs a hermetic mini-language target");
  }
  if (options.classes.empty()) throw ExperimentError("no defect classes enabled");
  require_original_passes(target, suite);
  if (n == 0) return SeededProgram{target, {}};

  // Original outputs over the whole search space, computed once.
  Oracle oracle;
  oracle.inputs = search_inputs(options, Rng::derive(seed, 0x5eed));
  {
    const auto exe = compile(target.genome);
    const auto runs = parallel_map<Execution>(oracle.inputs.size(), jobs, [&](std::size_t i) {
      return exe->run(oracle.inputs[i], *limits);
    });
    std::uint64_t most = 0;
    for (const Execution& run : runs) {
      std::optional<std::string> out;
      if (run.status == ExecStatus::Completed) {
        out = run.output;
        most = std::max(most, run.steps);
      }
      oracle.expected.push_back(std::move(out));
    }
    oracle.search = *limits;
    oracle.search.max_steps =
        std::min(limits->max_steps, std::max(kMinSearchSteps, kSearchStepFactor * most));
  }

  for (std::size_t restart = 0; restart <= options.restarts; ++restart) {
    if (auto done = stack_defects(target, suite, *original, n,
                                  Rng::derive(Rng::derive(seed, 1), restart), oracle,
                                  options, *limits, jobs)) {
      return std::move(*done);
    }
  }
  throw ExperimentError("could not stack " + std::to_string(n) + " defects in " +
                        std::to_string(options.restarts + 1) + " tries of " +
                        std::to_string(options.attempts_per_defect) +
                        " attempts per defect");
}

}  // namespace mutrb
