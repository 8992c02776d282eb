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

// Program representations and the copy/delete/swap operators.
//
// Two representations are supported. A TreeGenome is a statement-level syntax
// tree of a mini-language program; every statement node (including compound
// ones) is one mutable site. A LinearGenome is a flat listing split on line
// breaks; every instruction line is a site except protected directive lines.
//
// Site ids are positions: pre-order statement index for trees, line index for
// listings. They are re-derived whenever a genome is constructed, so a
// Mutation is only meaningful against the exact genome it was sampled from.

#ifndef MUTRB_GENOME_HPP_
#define MUTRB_GENOME_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mutrb/rng.hpp"

namespace mutrb {

using SiteId = std::size_t;

/// Inclusive 1-based line range in the genome's canonical text.
struct LineSpan {
  int first = 0;
  int last = 0;

  friend bool operator==(const LineSpan&, const LineSpan&) = default;
};

struct Site {
  SiteId id = 0;
  LineSpan span;

  friend bool operator==(const Site&, const Site&) = default;
};

// ---------------------------------------------------------------------------
// Mini-language syntax tree

enum class ExprKind { Int, Var, Index, Eof, Unary, Binary };
enum class UnaryOp { Neg, Not };
enum class BinaryOp { Or, And, Lt, Le, Gt, Ge, Eq, Ne, Add, Sub, Mul, Div, Mod };

struct Expr {
  ExprKind kind = ExprKind::Int;
  std::int64_t value = 0;  // Int
  std::string name;        // Var, Index (array name)
  UnaryOp unary = UnaryOp::Neg;
  BinaryOp binary = BinaryOp::Add;
  std::vector<Expr> args;  // Index: [index]; Unary: [operand]; Binary: [lhs, rhs]

  static Expr integer(std::int64_t v);
  static Expr variable(std::string name);

  friend bool operator==(const Expr&, const Expr&) = default;
};

enum class StmtKind { Assign, Read, Print, PrintText, If, While, Block, Break, Exit };

struct Stmt {
  StmtKind kind = StmtKind::Exit;
  std::string target;          // Assign/Read destination
  std::optional<Expr> index;   // present when the destination is an array slot
  std::optional<Expr> value;   // Assign/Print value, If/While condition
  std::string text;            // PrintText literal
  std::vector<Stmt> body;      // If then-branch, While body, Block contents
  std::vector<Stmt> orelse;
  bool has_else = false;

  bool compound() const {
    return kind == StmtKind::If || kind == StmtKind::While ||
           kind == StmtKind::Block;
  }

  friend bool operator==(const Stmt&, const Stmt&) = default;
};

class TreeGenome {
 public:
  /// Throws MutationError when `statements` is empty.
  explicit TreeGenome(std::vector<Stmt> statements);

  // nodes_ points into statements_, so copies re-index.
  TreeGenome(const TreeGenome& other);
  TreeGenome& operator=(const TreeGenome& other);
  TreeGenome(TreeGenome&&) noexcept = default;
  TreeGenome& operator=(TreeGenome&&) noexcept = default;

  const std::vector<Stmt>& statements() const { return statements_; }
  const std::vector<Site>& sites() const { return sites_; }
  std::size_t site_count() const { return sites_.size(); }

  /// Number of statements in the subtree rooted at `id` (itself included).
  std::size_t subtree_size(SiteId id) const { return subtree_sizes_.at(id); }
  const Stmt& statement(SiteId id) const { return *nodes_.at(id); }
  /// True when one site's subtree contains the other (or they are equal).
  bool nested(SiteId a, SiteId b) const;

  /// Canonical text (see serialize()).
  const std::string& text() const { return text_; }

  friend bool operator==(const TreeGenome& a, const TreeGenome& b) {
    return a.statements_ == b.statements_;
  }

 private:
  std::vector<Stmt> statements_;
  std::vector<Site> sites_;
  std::vector<std::size_t> subtree_sizes_;
  std::vector<const Stmt*> nodes_;
  std::string text_;
};

// ---------------------------------------------------------------------------
// Linear listings

struct Instruction {
  std::string text;
  bool is_protected = false;

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

class LinearGenome {
 public:
  explicit LinearGenome(std::vector<Instruction> instructions);

  const std::vector<Instruction>& instructions() const { return instructions_; }
  const std::vector<Site>& sites() const { return sites_; }
  std::size_t site_count() const { return sites_.size(); }
  std::size_t instruction_count() const { return instructions_.size(); }
  bool is_site(SiteId id) const {
    return id < instructions_.size() && !instructions_[id].is_protected;
  }

  friend bool operator==(const LinearGenome& a, const LinearGenome& b) {
    return a.instructions_ == b.instructions_;
  }

 private:
  std::vector<Instruction> instructions_;
  std::vector<Site> sites_;
};

using Genome = std::variant<TreeGenome, LinearGenome>;

// ---------------------------------------------------------------------------
// Coverage

/// Visit counts per site, keyed by every site of the genome it was computed
/// against (zero-count sites included).
struct CoverageMap {
  std::map<SiteId, std::uint64_t> counts;

  double covered_fraction() const;
  std::size_t covered_count() const;

  friend bool operator==(const CoverageMap&, const CoverageMap&) = default;
};

/// Coverage with every site of `genome` visited once.
CoverageMap full_coverage(const Genome& genome);

// ---------------------------------------------------------------------------
// Mutations

enum class MutationKind { Copy, Delete, Swap };

inline constexpr MutationKind kAllMutationKinds[] = {
    MutationKind::Copy, MutationKind::Delete, MutationKind::Swap};

std::string_view to_string(MutationKind kind);
/// Accepts "copy", "delete", "swap". Throws Error otherwise.
MutationKind parse_mutation_kind(std::string_view name);

struct Mutation {
  MutationKind kind = MutationKind::Delete;
  std::optional<SiteId> source;  // Copy: duplicated site; Swap: first site
  SiteId target = 0;             // Copy: insertion point; Swap: second site

  friend bool operator==(const Mutation&, const Mutation&) = default;
  friend auto operator<=>(const Mutation&, const Mutation&) = default;
};

std::string describe(const Mutation& mutation);

/// A genome together with the mutations separating it from its ancestor.
struct Variant {
  Genome genome;
  std::vector<Mutation> provenance;
  std::string origin;  // canonical key of the ancestral genome
};

// ---------------------------------------------------------------------------
// Operations

/// Parses mini-language source. Throws ParseError (with line/column) on
/// malformed or empty input.
TreeGenome parse_tree(std::string_view source);

inline const std::vector<std::string>& default_protected_prefixes() {
  static const std::vector<std::string> prefixes{"."};
  return prefixes;
}

/// One instruction per non-blank line (trimmed); lines starting with any of
/// `protected_prefixes` are protected. Throws ParseError on all-blank input.
LinearGenome parse_linear(
    std::string_view listing,
    const std::vector<std::string>& protected_prefixes =
        default_protected_prefixes());

std::string serialize(const TreeGenome& genome);
std::string serialize(const LinearGenome& genome);
std::string serialize(const Genome& genome);

const std::vector<Site>& sites_of(const Genome& genome);
std::size_t site_count(const Genome& genome);
/// Walk size: statements for trees, instructions for listings.
std::size_t genome_size(const Genome& genome);
std::string_view size_unit(const Genome& genome);

/// Sites with a positive visit count, in program order. Throws CoverageError
/// when the map names ids that are not sites of `genome`.
std::vector<Site> enumerate_sites(const Genome& genome,
                                  const CoverageMap& coverage);

/// Number of valid mutations of `kind` over `sites` (ordered pairs for Copy,
/// unordered non-nested pairs for Swap).
std::uint64_t mutation_space_size(const Genome& genome,
                                  const std::vector<Site>& sites,
                                  MutationKind kind);

/// Every valid mutation of `kind` over `sites`, in lexicographic site order.
std::vector<Mutation> enumerate_mutations(const Genome& genome,
                                          const std::vector<Site>& sites,
                                          MutationKind kind);

/// Uniform draw over the valid mutations of `kind` restricted to covered
/// sites. Throws MutationError when none exist.
Mutation sample_mutation(const Genome& genome, const CoverageMap& coverage,
                         MutationKind kind, Rng& rng);
Mutation sample_mutation(const Genome& genome, const std::vector<Site>& sites,
                         MutationKind kind, Rng& rng);

/// Applies `mutation` to a copy of `genome`. Throws MutationError for unknown
/// sites, nested or identical swap sites, and deletions that would leave the
/// program empty.
Genome apply_mutation(const Genome& genome, const Mutation& mutation);
TreeGenome apply_mutation(const TreeGenome& genome, const Mutation& mutation);
LinearGenome apply_mutation(const LinearGenome& genome,
                            const Mutation& mutation);

/// Folds apply_mutation over `provenance`.
Genome replay(const Genome& origin, const std::vector<Mutation>& provenance);

/// Line ranges of `genome` that `mutation` touches: the deleted subtree, both
/// swapped subtrees, or the insertion point of a copy.
std::vector<LineSpan> mutation_spans(const Genome& genome,
                                     const Mutation& mutation);

/// Canonical form used for deduplication: statements after an unconditional
/// exit (break/exit, or jmp/halt up to the next label) are dropped and
/// whitespace is normalized.
std::string canonical_text(const Genome& genome);
/// Lowercase hex SHA-256 of canonical_text().
std::string canonical_key(const Genome& genome);

/// Static well-formedness (the "compiles" analog): `break` only inside loops
/// for trees. Listings are checked by the assembler in minilang.
bool well_formed(const TreeGenome& genome, std::string* why = nullptr);

}  // namespace mutrb

#endif  // MUTRB_GENOME_HPP_
