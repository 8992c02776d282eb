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

// Tree-walking interpreter. Names are resolved to slots once per genome so
// that the hot loop never touches strings.

#include <cctype>
#include <charconv>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "mutrb/minilang.hpp"
#include "runtime.hpp"

namespace mutrb {
namespace {

struct Node {
  ExprKind kind = ExprKind::Int;
  UnaryOp unary = UnaryOp::Neg;
  BinaryOp binary = BinaryOp::Add;
  std::int64_t value = 0;  // literal, or slot for Var/Index
  int lhs = -1;
  int rhs = -1;
};

struct Statement {
  StmtKind kind = StmtKind::Exit;
  SiteId site = 0;
  int slot = -1;   // destination scalar or array
  int index = -1;  // destination index expression
  int value = -1;  // value / condition expression
  std::string text;
  std::vector<int> body;
  std::vector<int> orelse;
};

enum class Flow { Next, Break, Exit };

class TreeExecutable final : public Executable {
 public:
  explicit TreeExecutable(const TreeGenome& genome) : site_count_(genome.site_count()) {
    std::string why;
    if (!well_formed(genome, &why)) throw InvalidProgram(why);
    SiteId next_site = 0;
    top_ = lower_list(genome.statements(), next_site);
  }

  Execution run(const std::vector<std::int64_t>& input,
                const Limits& limits) const override;

 private:
  friend class Machine;

  std::vector<int> lower_list(const std::vector<Stmt>& list, SiteId& next_site) {
    std::vector<int> out;
    for (const Stmt& s : list) out.push_back(lower_stmt(s, next_site));
    return out;
  }

  int lower_stmt(const Stmt& s, SiteId& next_site) {
    Statement st;
    st.kind = s.kind;
    st.site = next_site++;
    st.text = s.text;
    if (s.kind == StmtKind::Assign || s.kind == StmtKind::Read) {
      st.slot = s.index ? array_slot(s.target) : scalar_slot(s.target);
      if (s.index) st.index = lower_expr(*s.index);
    }
    if (s.value) st.value = lower_expr(*s.value);
    // Reserve before recursing: children append to stmts_.
    const int id = static_cast<int>(stmts_.size());
    stmts_.push_back(std::move(st));
    std::vector<int> body = lower_list(s.body, next_site);
    std::vector<int> orelse = lower_list(s.orelse, next_site);
    stmts_[static_cast<std::size_t>(id)].body = std::move(body);
    stmts_[static_cast<std::size_t>(id)].orelse = std::move(orelse);
    return id;
  }

  int lower_expr(const Expr& e) {
    Node n;
    n.kind = e.kind;
    n.unary = e.unary;
    n.binary = e.binary;
    switch (e.kind) {
      case ExprKind::Int: n.value = e.value; break;
      case ExprKind::Var: n.value = scalar_slot(e.name); break;
      case ExprKind::Index:
        n.value = array_slot(e.name);
        n.lhs = lower_expr(e.args[0]);
        break;
      case ExprKind::Eof: break;
      case ExprKind::Unary: n.lhs = lower_expr(e.args[0]); break;
      case ExprKind::Binary:
        n.lhs = lower_expr(e.args[0]);
        n.rhs = lower_expr(e.args[1]);
        break;
    }
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size()) - 1;
  }

  int scalar_slot(const std::string& name) {
    auto [it, fresh] = scalars_.try_emplace(name, static_cast<int>(scalars_.size()));
    return it->second;
  }
  int array_slot(const std::string& name) {
    auto [it, fresh] = arrays_.try_emplace(name, static_cast<int>(arrays_.size()));
    return it->second;
  }

  std::size_t site_count_;
  std::vector<Node> nodes_;
  std::vector<Statement> stmts_;
  std::vector<int> top_;
  std::unordered_map<std::string, int> scalars_;
  std::unordered_map<std::string, int> arrays_;
};

class Machine {
 public:
  Machine(const TreeExecutable& prog, const std::vector<std::int64_t>& input,
          const Limits& limits)
      : prog_(prog),
        state_(input, limits, prog.site_count_),
        scalars_(prog.scalars_.size(), 0),
        arrays_(prog.arrays_.size()) {}

  Execution run() {
    try {
      run_list(prog_.top_);
    } catch (const runtime::Stop&) {
    }
    return state_.finish();
  }

 private:
  Flow run_list(const std::vector<int>& ids) {
    for (int id : ids) {
      const Flow f = exec(prog_.stmts_[static_cast<std::size_t>(id)]);
      if (f != Flow::Next) return f;
    }
    return Flow::Next;
  }

  Flow exec(const Statement& s) {
    state_.step(s.site);
    switch (s.kind) {
      case StmtKind::Assign: {
        if (s.index >= 0) {
          const std::int64_t idx = eval(s.index);
          const std::int64_t v = eval(s.value);
          state_.store(arrays_[static_cast<std::size_t>(s.slot)], idx, v);
        } else {
          scalars_[static_cast<std::size_t>(s.slot)] = eval(s.value);
        }
        return Flow::Next;
      }
      case StmtKind::Read: {
        if (s.index >= 0) {
          const std::int64_t idx = eval(s.index);
          state_.store(arrays_[static_cast<std::size_t>(s.slot)], idx,
                       state_.read());
        } else {
          scalars_[static_cast<std::size_t>(s.slot)] = state_.read();
        }
        return Flow::Next;
      }
      case StmtKind::Print:
        state_.print(eval(s.value));
        return Flow::Next;
      case StmtKind::PrintText:
        state_.print_text(s.text);
        return Flow::Next;
      case StmtKind::If:
        if (eval(s.value) != 0) return run_list(s.body);
        return run_list(s.orelse);
      case StmtKind::While: {
        bool first = true;
        for (;;) {
          // Each further guard evaluation is one more step on the same site.
          if (!first) state_.step(s.site);
          first = false;
          if (eval(s.value) == 0) return Flow::Next;
          const Flow f = run_list(s.body);
          if (f == Flow::Break) return Flow::Next;
          if (f == Flow::Exit) return f;
        }
      }
      case StmtKind::Block:
        return run_list(s.body);
      case StmtKind::Break:
        return Flow::Break;
      case StmtKind::Exit:
        return Flow::Exit;
    }
    return Flow::Next;
  }

  std::int64_t eval(int id) {
    const Node& n = prog_.nodes_[static_cast<std::size_t>(id)];
    switch (n.kind) {
      case ExprKind::Int:
        return n.value;
      case ExprKind::Var:
        return scalars_[static_cast<std::size_t>(n.value)];
      case ExprKind::Index:
        return state_.load(arrays_[static_cast<std::size_t>(n.value)], eval(n.lhs));
      case ExprKind::Eof:
        return state_.at_eof() ? 1 : 0;
      case ExprKind::Unary: {
        const std::int64_t v = eval(n.lhs);
        return n.unary == UnaryOp::Not ? (v == 0 ? 1 : 0) : runtime::neg(v);
      }
      case ExprKind::Binary:
        if (n.binary == BinaryOp::And) {
          return eval(n.lhs) != 0 && eval(n.rhs) != 0 ? 1 : 0;
        }
        if (n.binary == BinaryOp::Or) {
          return eval(n.lhs) != 0 || eval(n.rhs) != 0 ? 1 : 0;
        }
        {
          const std::int64_t a = eval(n.lhs);
          const std::int64_t b = eval(n.rhs);
          return state_.arith(n.binary, a, b);
        }
    }
    return 0;
  }

  const TreeExecutable& prog_;
  runtime::State state_;
  std::vector<std::int64_t> scalars_;
  std::vector<std::vector<std::int64_t>> arrays_;
};

Execution TreeExecutable::run(const std::vector<std::int64_t>& input,
                              const Limits& limits) const {
  return Machine(*this, input, limits).run();
}

}  // namespace

std::string_view to_string(ExecStatus status) {
  switch (status) {
    case ExecStatus::Completed: return "completed";
    case ExecStatus::StepLimit: return "step-limit";
    case ExecStatus::RuntimeError: return "runtime-error";
  }
  return "?";
}

std::vector<std::int64_t> parse_input(std::string_view text) {
  std::vector<std::int64_t> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::int64_t v = 0;
    const char* first = text.data() + i;
    const char* last = text.data() + j;
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
      throw Error("input token '" + std::string(text.substr(i, j - i)) +
                  "' is not an integer");
    }
    out.push_back(v);
    i = j;
  }
  return out;
}

namespace detail {
std::unique_ptr<Executable> compile_tree(const TreeGenome& genome) {
  return std::make_unique<TreeExecutable>(genome);
}
}  // namespace detail

Execution run_program(const TreeGenome& genome, std::string_view input,
                      const Limits& limits) {
  return TreeExecutable(genome).run(parse_input(input), limits);
}

}  // namespace mutrb
