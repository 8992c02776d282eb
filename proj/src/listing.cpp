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

// Stack-machine listings: assembler, VM and the lowering from syntax trees.
//
// Listing syntax, one instruction per line:
//   push N | load V | store V | aload A | astore A | read | eof | print
//   prints "text" | add sub mul div mod lt le gt ge eq ne neg not
//   jmp L | jz L | jnz L | dup | pop | nop | halt
// Lines starting with '.' are directives; `.label L` defines a jump target
// and every other directive is ignored at run time.

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mutrb/minilang.hpp"
#include "runtime.hpp"

namespace mutrb {
namespace {

enum class Op {
  Push, Load, Store, ALoad, AStore, Read, Eof, Print, PrintText,
  Arith, Neg, Not, Jmp, Jz, Jnz, Dup, Pop, Nop, Halt
};

struct Code {
  Op op = Op::Nop;
  BinaryOp arith = BinaryOp::Add;
  std::int64_t operand = 0;  // literal, slot, or jump target (code index)
  std::string text;
  std::size_t line = 0;  // instruction index in the listing
};

constexpr std::size_t kMaxStack = 4096;

std::vector<std::string_view> words(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string unquote(std::string_view raw, std::size_t line) {
  const auto bad = [&] {
    return InvalidProgram("line " + std::to_string(line + 1) +
                          ": malformed string operand");
  };
  if (raw.size() < 2 || raw.front() != '"' || raw.back() != '"') throw bad();
  std::string out;
  for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
    char c = raw[i];
    if (c == '\\') {
      if (i + 2 >= raw.size()) throw bad();
      switch (raw[++i]) {
        case 'n': c = '\n'; break;
        case 't': c = '\t'; break;
        case '\\': c = '\\'; break;
        case '"': c = '"'; break;
        case 's': c = ' '; break;
        default: throw bad();
      }
    }
    out.push_back(c);
  }
  return out;
}

std::string quote(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      // Spaces are escaped so operands survive whitespace normalization.
      case ' ': out += "\\s"; break;
      default: out.push_back(c);
    }
  }
  out.push_back('"');
  return out;
}

class ListingExecutable final : public Executable {
 public:
  explicit ListingExecutable(const LinearGenome& genome)
      : line_count_(genome.instruction_count()) {
    const auto& ins = genome.instructions();
    std::unordered_map<std::string, std::size_t> labels;
    struct Fixup {
      std::size_t code;
      std::string label;
    };
    std::vector<Fixup> fixups;
    for (std::size_t i = 0; i < ins.size(); ++i) {
      const std::string_view text = ins[i].text;
      const auto w = words(text);
      if (w.empty()) continue;
      const auto invalid = [&](const std::string& why) {
        return InvalidProgram("line " + std::to_string(i + 1) + ": " + why);
      };
      if (text.front() == '.') {
        if (w[0] == ".label") {
          if (w.size() != 2) throw invalid("malformed label");
          if (!labels.emplace(std::string(w[1]), code_.size()).second) {
            throw invalid("duplicate label " + std::string(w[1]));
          }
        }
        continue;
      }
      Code c;
      c.line = i;
      const std::string_view op = w[0];
      const auto want = [&](std::size_t n) {
        if (w.size() != n + 1) throw invalid("wrong operand count for " + std::string(op));
      };
      static const std::unordered_map<std::string_view, BinaryOp> kArith{
          {"add", BinaryOp::Add}, {"sub", BinaryOp::Sub}, {"mul", BinaryOp::Mul},
          {"div", BinaryOp::Div}, {"mod", BinaryOp::Mod}, {"lt", BinaryOp::Lt},
          {"le", BinaryOp::Le},   {"gt", BinaryOp::Gt},   {"ge", BinaryOp::Ge},
          {"eq", BinaryOp::Eq},   {"ne", BinaryOp::Ne}};
      if (auto it = kArith.find(op); it != kArith.end()) {
        want(0);
        c.op = Op::Arith;
        c.arith = it->second;
      } else if (op == "push") {
        want(1);
        c.op = Op::Push;
        auto [p, ec] = std::from_chars(w[1].data(), w[1].data() + w[1].size(), c.operand);
        if (ec != std::errc() || p != w[1].data() + w[1].size()) {
          throw invalid("bad literal " + std::string(w[1]));
        }
      } else if (op == "load" || op == "store") {
        want(1);
        c.op = op == "load" ? Op::Load : Op::Store;
        c.operand = slot(scalars_, w[1]);
      } else if (op == "aload" || op == "astore") {
        want(1);
        c.op = op == "aload" ? Op::ALoad : Op::AStore;
        c.operand = slot(arrays_, w[1]);
      } else if (op == "jmp" || op == "jz" || op == "jnz") {
        want(1);
        c.op = op == "jmp" ? Op::Jmp : (op == "jz" ? Op::Jz : Op::Jnz);
        fixups.push_back(Fixup{code_.size(), std::string(w[1])});
      } else if (op == "prints") {
        const auto start = text.find('"');
        if (start == std::string_view::npos) throw invalid("prints needs a string");
        c.op = Op::PrintText;
        c.text = unquote(text.substr(start), i);
      } else {
        static const std::unordered_map<std::string_view, Op> kBare{
            {"read", Op::Read}, {"eof", Op::Eof}, {"print", Op::Print},
            {"neg", Op::Neg},   {"not", Op::Not}, {"dup", Op::Dup},
            {"pop", Op::Pop},   {"nop", Op::Nop}, {"halt", Op::Halt}};
        auto it = kBare.find(op);
        if (it == kBare.end()) throw invalid("unknown instruction " + std::string(op));
        want(0);
        c.op = it->second;
      }
      code_.push_back(std::move(c));
    }
    for (const Fixup& f : fixups) {
      auto it = labels.find(f.label);
      if (it == labels.end()) {
        throw InvalidProgram("line " + std::to_string(code_[f.code].line + 1) +
                             ": undefined label " + f.label);
      }
      code_[f.code].operand = static_cast<std::int64_t>(it->second);
    }
  }

  Execution run(const std::vector<std::int64_t>& input,
                const Limits& limits) const override {
    runtime::State state(input, limits, line_count_);
    std::vector<std::int64_t> scalars(scalars_.size(), 0);
    std::vector<std::vector<std::int64_t>> arrays(arrays_.size());
    std::vector<std::int64_t> stack;
    const auto pop = [&]() -> std::int64_t {
      if (stack.empty()) state.fail("stack underflow");
      const std::int64_t v = stack.back();
      stack.pop_back();
      return v;
    };
    const auto push = [&](std::int64_t v) {
      if (stack.size() >= kMaxStack) state.fail("stack overflow");
      stack.push_back(v);
    };
    try {
      std::size_t pc = 0;
      while (pc < code_.size()) {
        const Code& c = code_[pc];
        state.step(c.line);
        ++pc;
        switch (c.op) {
          case Op::Push: push(c.operand); break;
          case Op::Load: push(scalars[static_cast<std::size_t>(c.operand)]); break;
          case Op::Store: scalars[static_cast<std::size_t>(c.operand)] = pop(); break;
          case Op::ALoad: {
            const std::int64_t idx = pop();
            push(state.load(arrays[static_cast<std::size_t>(c.operand)], idx));
            break;
          }
          case Op::AStore: {
            const std::int64_t v = pop();
            const std::int64_t idx = pop();
            state.store(arrays[static_cast<std::size_t>(c.operand)], idx, v);
            break;
          }
          case Op::Read: push(state.read()); break;
          case Op::Eof: push(state.at_eof() ? 1 : 0); break;
          case Op::Print: state.print(pop()); break;
          case Op::PrintText: state.print_text(c.text); break;
          case Op::Arith: {
            const std::int64_t b = pop();
            const std::int64_t a = pop();
            push(state.arith(c.arith, a, b));
            break;
          }
          case Op::Neg: push(runtime::neg(pop())); break;
          case Op::Not: push(pop() == 0 ? 1 : 0); break;
          case Op::Jmp: pc = static_cast<std::size_t>(c.operand); break;
          case Op::Jz:
            if (pop() == 0) pc = static_cast<std::size_t>(c.operand);
            break;
          case Op::Jnz:
            if (pop() != 0) pc = static_cast<std::size_t>(c.operand);
            break;
          case Op::Dup: {
            const std::int64_t v = pop();
            push(v);
            push(v);
            break;
          }
          case Op::Pop: pop(); break;
          case Op::Nop: break;
          case Op::Halt: pc = code_.size(); break;
        }
      }
    } catch (const runtime::Stop&) {
    }
    return state.finish();
  }

 private:
  static std::int64_t slot(std::unordered_map<std::string, int>& table,
                           std::string_view name) {
    auto [it, fresh] =
        table.try_emplace(std::string(name), static_cast<int>(table.size()));
    return it->second;
  }

  std::size_t line_count_;
  std::vector<Code> code_;
  std::unordered_map<std::string, int> scalars_;
  std::unordered_map<std::string, int> arrays_;
};

// ---------------------------------------------------------------------------
// Lowering

class Lowerer {
 public:
  std::vector<Instruction> out;

  void list(const std::vector<Stmt>& stmts) {
    for (const Stmt& s : stmts) statement(s);
  }

 private:
  std::string fresh() { return "L" + std::to_string(next_label_++); }
  void emit(std::string text) { out.push_back(Instruction{std::move(text), false}); }
  void label(const std::string& name) {
    out.push_back(Instruction{".label " + name, true});
  }

  void statement(const Stmt& s) {
    switch (s.kind) {
      case StmtKind::Assign:
        if (s.index) {
          expr(*s.index);
          expr(*s.value);
          emit("astore " + s.target);
        } else {
          expr(*s.value);
          emit("store " + s.target);
        }
        break;
      case StmtKind::Read:
        if (s.index) {
          expr(*s.index);
          emit("read");
          emit("astore " + s.target);
        } else {
          emit("read");
          emit("store " + s.target);
        }
        break;
      case StmtKind::Print:
        expr(*s.value);
        emit("print");
        break;
      case StmtKind::PrintText:
        emit("prints " + quote(s.text));
        break;
      case StmtKind::If: {
        const std::string other = fresh();
        const std::string done = fresh();
        expr(*s.value);
        emit("jz " + other);
        list(s.body);
        if (s.has_else) {
          emit("jmp " + done);
          label(other);
          list(s.orelse);
          label(done);
        } else {
          label(other);
        }
        break;
      }
      case StmtKind::While: {
        const std::string top = fresh();
        const std::string done = fresh();
        label(top);
        expr(*s.value);
        emit("jz " + done);
        loop_exits_.push_back(done);
        list(s.body);
        loop_exits_.pop_back();
        emit("jmp " + top);
        label(done);
        break;
      }
      case StmtKind::Block:
        list(s.body);
        break;
      case StmtKind::Break:
        if (loop_exits_.empty()) throw InvalidProgram("break outside of a loop");
        emit("jmp " + loop_exits_.back());
        break;
      case StmtKind::Exit:
        emit("halt");
        break;
    }
  }

  void expr(const Expr& e) {
    switch (e.kind) {
      case ExprKind::Int: emit("push " + std::to_string(e.value)); return;
      case ExprKind::Var: emit("load " + e.name); return;
      case ExprKind::Eof: emit("eof"); return;
      case ExprKind::Index:
        expr(e.args[0]);
        emit("aload " + e.name);
        return;
      case ExprKind::Unary:
        expr(e.args[0]);
        emit(e.unary == UnaryOp::Not ? "not" : "neg");
        return;
      case ExprKind::Binary:
        break;
    }
    if (e.binary == BinaryOp::And || e.binary == BinaryOp::Or) {
      const bool is_and = e.binary == BinaryOp::And;
      const std::string shortcut = fresh();
      const std::string done = fresh();
      const std::string jump = is_and ? "jz " : "jnz ";
      expr(e.args[0]);
      emit(jump + shortcut);
      expr(e.args[1]);
      emit(jump + shortcut);
      emit(is_and ? "push 1" : "push 0");
      emit("jmp " + done);
      label(shortcut);
      emit(is_and ? "push 0" : "push 1");
      label(done);
      return;
    }
    static const char* const kNames[] = {"or", "and", "lt", "le", "gt", "ge", "eq",
                                         "ne", "add", "sub", "mul", "div", "mod"};
    expr(e.args[0]);
    expr(e.args[1]);
    emit(kNames[static_cast<int>(e.binary)]);
  }

  int next_label_ = 0;
  std::vector<std::string> loop_exits_;
};

}  // namespace

namespace detail {
std::unique_ptr<Executable> compile_listing(const LinearGenome& genome) {
  return std::make_unique<ListingExecutable>(genome);
}
}  // namespace detail

std::unique_ptr<Executable> compile(const Genome& genome) {
  if (const auto* tree = std::get_if<TreeGenome>(&genome)) {
    return detail::compile_tree(*tree);
  }
  return detail::compile_listing(std::get<LinearGenome>(genome));
}

Execution run_listing(const LinearGenome& genome, std::string_view input,
                      const Limits& limits) {
  return ListingExecutable(genome).run(parse_input(input), limits);
}

CoverageMap coverage_of(const Genome& genome, const TestSuite& suite,
                        const Limits& limits) {
  CoverageMap map;
  for (const Site& s : sites_of(genome)) map.counts[s.id] = 0;
  if (suite.cases.empty()) return map;
  std::unique_ptr<Executable> exe;
  try {
    exe = compile(genome);
  } catch (const InvalidProgram&) {
    return map;
  }
  for (const TestCase& c : suite.cases) {
    const Execution run = exe->run(parse_input(c.input), limits);
    for (std::size_t id = 0; id < run.trace.size(); ++id) {
      if (run.trace[id] == 0) continue;
      auto it = map.counts.find(id);
      if (it != map.counts.end()) it->second += run.trace[id];
    }
  }
  return map;
}

LinearGenome lower_to_linear(const TreeGenome& genome) {
  Lowerer lowerer;
  lowerer.out.push_back(Instruction{".text", true});
  lowerer.list(genome.statements());
  lowerer.out.push_back(Instruction{".end", true});
  return LinearGenome(std::move(lowerer.out));
}

}  // namespace mutrb
