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

// Lexer, parser and canonical printer for the mini-language.
//
//   program   := stmt+
//   stmt      := lvalue ':=' expr ';' | 'read' lvalue ';'
//              | 'print' (expr | STRING) ';'
//              | 'if' expr block ('else' (block | if-stmt))?
//              | 'while' expr block | block | 'break' ';' | 'exit' ';'
//   lvalue    := IDENT ('[' expr ']')?
//   expr      := and ('or' and)*
//   and       := not ('and' not)*
//   not       := 'not' not | cmp
//   cmp       := sum (('<'|'<='|'>'|'>='|'=='|'!=') sum)*
//   sum       := term (('+'|'-') term)*
//   term      := unary (('*'|'/'|'%') unary)*
//   unary     := '-' unary | primary
//   primary   := INT | IDENT ('[' expr ']')? | 'eof' | '(' expr ')'
//
// `#` starts a comment that runs to the end of the line.

#include <cctype>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mutrb/error.hpp"
#include "mutrb/genome.hpp"

namespace mutrb {
namespace {

enum class Tok { Ident, Int, String, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::int64_t value = 0;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = column_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Tok::Ident;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                src_[pos_] == '_')) {
          t.text.push_back(advance());
        }
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = Tok::Int;
        std::uint64_t v = 0;
        while (pos_ < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          const auto digit = static_cast<std::uint64_t>(advance() - '0');
          if (v > (static_cast<std::uint64_t>(
                       std::numeric_limits<std::int64_t>::max()) -
                   digit) /
                      10) {
            throw ParseError(t.line, t.column, "integer literal out of range");
          }
          v = v * 10 + digit;
        }
        t.value = static_cast<std::int64_t>(v);
      } else if (c == '"') {
        t.kind = Tok::String;
        advance();
        for (;;) {
          if (pos_ >= src_.size() || src_[pos_] == '\n') {
            throw ParseError(t.line, t.column, "unterminated string literal");
          }
          char ch = advance();
          if (ch == '"') break;
          if (ch == '\\') {
            if (pos_ >= src_.size()) {
              throw ParseError(t.line, t.column, "unterminated string literal");
            }
            const char esc = advance();
            switch (esc) {
              case 'n': ch = '\n'; break;
              case 't': ch = '\t'; break;
              case '\\': ch = '\\'; break;
              case '"': ch = '"'; break;
              default:
                throw ParseError(line_, column_ - 1,
                                 std::string("unknown escape \\") + esc);
            }
          }
          t.text.push_back(ch);
        }
      } else {
        t.kind = Tok::Punct;
        static constexpr std::string_view kTwo[] = {":=", "<=", ">=", "==",
                                                    "!="};
        bool matched = false;
        for (auto two : kTwo) {
          if (src_.substr(pos_, 2) == two) {
            t.text = std::string(two);
            advance();
            advance();
            matched = true;
            break;
          }
        }
        if (!matched) {
          static constexpr std::string_view kOne = "()[]{};<>+-*/%";
          if (kOne.find(c) == std::string_view::npos) {
            throw ParseError(t.line, t.column,
                             std::string("unexpected character '") + c + "'");
          }
          t.text = std::string(1, advance());
        }
      }
      out.push_back(std::move(t));
    }
  }

 private:
  char advance() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

bool is_keyword(std::string_view word) {
  static constexpr std::string_view kWords[] = {
      "if", "else", "while", "read", "print", "break",
      "exit", "and", "or", "not", "eof"};
  for (auto k : kWords) {
    if (k == word) return true;
  }
  return false;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  std::vector<Stmt> program() {
    std::vector<Stmt> out;
    while (peek().kind != Tok::End) out.push_back(statement());
    if (out.empty()) throw ParseError(peek().line, peek().column, "empty program");
    return out;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }

  bool at_punct(std::string_view p) const {
    return peek().kind == Tok::Punct && peek().text == p;
  }
  bool at_word(std::string_view w) const {
    return peek().kind == Tok::Ident && peek().text == w;
  }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    if (t.kind == Tok::Int) found = std::to_string(t.value);
    if (t.kind == Tok::String) found = "string literal";
    throw ParseError(t.line, t.column, "expected " + what + ", found " + found);
  }

  void expect(std::string_view p) {
    if (!at_punct(p)) fail("'" + std::string(p) + "'");
    take();
  }

  std::string identifier() {
    if (peek().kind != Tok::Ident || is_keyword(peek().text)) fail("identifier");
    return take().text;
  }

  std::vector<Stmt> block() {
    expect("{");
    std::vector<Stmt> out;
    while (!at_punct("}")) {
      if (peek().kind == Tok::End) fail("'}'");
      out.push_back(statement());
    }
    take();
    return out;
  }

  void lvalue(Stmt& s) {
    s.target = identifier();
    if (at_punct("[")) {
      take();
      s.index = expr();
      expect("]");
    }
  }

  Stmt statement() {
    Stmt s;
    if (at_word("if")) {
      take();
      s.kind = StmtKind::If;
      s.value = expr();
      s.body = block();
      if (at_word("else")) {
        take();
        s.has_else = true;
        if (at_word("if")) {
          s.orelse.push_back(statement());
        } else {
          s.orelse = block();
        }
      }
    } else if (at_word("while")) {
      take();
      s.kind = StmtKind::While;
      s.value = expr();
      s.body = block();
    } else if (at_punct("{")) {
      s.kind = StmtKind::Block;
      s.body = block();
    } else if (at_word("read")) {
      take();
      s.kind = StmtKind::Read;
      lvalue(s);
      expect(";");
    } else if (at_word("print")) {
      take();
      if (peek().kind == Tok::String) {
        s.kind = StmtKind::PrintText;
        s.text = take().text;
      } else {
        s.kind = StmtKind::Print;
        s.value = expr();
      }
      expect(";");
    } else if (at_word("break")) {
      take();
      s.kind = StmtKind::Break;
      expect(";");
    } else if (at_word("exit")) {
      take();
      s.kind = StmtKind::Exit;
      expect(";");
    } else if (peek().kind == Tok::Ident && !is_keyword(peek().text)) {
      s.kind = StmtKind::Assign;
      lvalue(s);
      expect(":=");
      s.value = expr();
      expect(";");
    } else {
      fail("statement");
    }
    return s;
  }

  static Expr binary(BinaryOp op, Expr lhs, Expr rhs) {
    Expr e;
    e.kind = ExprKind::Binary;
    e.binary = op;
    e.args.push_back(std::move(lhs));
    e.args.push_back(std::move(rhs));
    return e;
  }

  Expr expr() {
    Expr lhs = conjunction();
    while (at_word("or")) {
      take();
      lhs = binary(BinaryOp::Or, std::move(lhs), conjunction());
    }
    return lhs;
  }

  Expr conjunction() {
    Expr lhs = negation();
    while (at_word("and")) {
      take();
      lhs = binary(BinaryOp::And, std::move(lhs), negation());
    }
    return lhs;
  }

  Expr negation() {
    if (at_word("not")) {
      take();
      Expr e;
      e.kind = ExprKind::Unary;
      e.unary = UnaryOp::Not;
      e.args.push_back(negation());
      return e;
    }
    return comparison();
  }

  Expr comparison() {
    Expr lhs = sum();
    for (;;) {
      BinaryOp op;
      if (at_punct("<")) op = BinaryOp::Lt;
      else if (at_punct("<=")) op = BinaryOp::Le;
      else if (at_punct(">")) op = BinaryOp::Gt;
      else if (at_punct(">=")) op = BinaryOp::Ge;
      else if (at_punct("==")) op = BinaryOp::Eq;
      else if (at_punct("!=")) op = BinaryOp::Ne;
      else return lhs;
      take();
      lhs = binary(op, std::move(lhs), sum());
    }
  }

  Expr sum() {
    Expr lhs = term();
    for (;;) {
      BinaryOp op;
      if (at_punct("+")) op = BinaryOp::Add;
      else if (at_punct("-")) op = BinaryOp::Sub;
      else return lhs;
      take();
      lhs = binary(op, std::move(lhs), term());
    }
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      BinaryOp op;
      if (at_punct("*")) op = BinaryOp::Mul;
      else if (at_punct("/")) op = BinaryOp::Div;
      else if (at_punct("%")) op = BinaryOp::Mod;
      else return lhs;
      take();
      lhs = binary(op, std::move(lhs), unary());
    }
  }

  Expr unary() {
    if (at_punct("-")) {
      take();
      Expr operand = unary();
      // "-5" is one literal, not a negation.
      if (operand.kind == ExprKind::Int) {
        operand.value = static_cast<std::int64_t>(
            0 - static_cast<std::uint64_t>(operand.value));
        return operand;
      }
      Expr e;
      e.kind = ExprKind::Unary;
      e.unary = UnaryOp::Neg;
      e.args.push_back(std::move(operand));
      return e;
    }
    return primary();
  }

  Expr primary() {
    if (peek().kind == Tok::Int) return Expr::integer(take().value);
    if (at_word("eof")) {
      take();
      Expr e;
      e.kind = ExprKind::Eof;
      return e;
    }
    if (at_punct("(")) {
      take();
      Expr e = expr();
      expect(")");
      return e;
    }
    if (peek().kind == Tok::Ident && !is_keyword(peek().text)) {
      std::string name = take().text;
      if (at_punct("[")) {
        take();
        Expr e;
        e.kind = ExprKind::Index;
        e.name = std::move(name);
        e.args.push_back(expr());
        expect("]");
        return e;
      }
      return Expr::variable(std::move(name));
    }
    fail("expression");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Binding strength, loosest first. Negative literals bind at unary level.
int precedence(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Binary:
      switch (e.binary) {
        case BinaryOp::Or: return 1;
        case BinaryOp::And: return 2;
        case BinaryOp::Add:
        case BinaryOp::Sub: return 5;
        case BinaryOp::Mul:
        case BinaryOp::Div:
        case BinaryOp::Mod: return 6;
        default: return 4;
      }
    case ExprKind::Unary:
      return e.unary == UnaryOp::Not ? 3 : 7;
    case ExprKind::Int:
      return e.value < 0 ? 7 : 8;
    default:
      return 8;
  }
}

std::string_view symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::Or: return "or";
    case BinaryOp::And: return "and";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Mod: return "%";
  }
  return "?";
}

void print_expr(const Expr& e, std::string& out);

void print_operand(const Expr& e, int min_prec, std::string& out) {
  if (precedence(e) < min_prec) {
    out.push_back('(');
    print_expr(e, out);
    out.push_back(')');
  } else {
    print_expr(e, out);
  }
}

void print_expr(const Expr& e, std::string& out) {
  switch (e.kind) {
    case ExprKind::Int:
      out += std::to_string(e.value);
      return;
    case ExprKind::Var:
      out += e.name;
      return;
    case ExprKind::Eof:
      out += "eof";
      return;
    case ExprKind::Index:
      out += e.name;
      out.push_back('[');
      print_expr(e.args[0], out);
      out.push_back(']');
      return;
    case ExprKind::Unary:
      if (e.unary == UnaryOp::Not) {
        out += "not ";
        print_operand(e.args[0], 3, out);
      } else {
        // The parser folds negated literals, so the operand is never an Int.
        out.push_back('-');
        print_operand(e.args[0], 8, out);
      }
      return;
    case ExprKind::Binary: {
      const int p = precedence(e);
      print_operand(e.args[0], p, out);
      out.push_back(' ');
      out += symbol(e.binary);
      out.push_back(' ');
      print_operand(e.args[1], p + 1, out);
      return;
    }
  }
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      default: out.push_back(c);
    }
  }
  return out;
}

class Printer {
 public:
  std::string text;
  std::vector<Site> sites;
  std::vector<std::size_t> sizes;
  std::vector<const Stmt*> nodes;

  void list(const std::vector<Stmt>& stmts, int depth) {
    for (const Stmt& s : stmts) statement(s, depth);
  }

 private:
  int line_ = 1;

  void emit(int depth, const std::string& body) {
    text.append(static_cast<std::size_t>(depth) * 2, ' ');
    text += body;
    text.push_back('\n');
    ++line_;
  }

  std::string lvalue(const Stmt& s) {
    std::string out = s.target;
    if (s.index) {
      out.push_back('[');
      print_expr(*s.index, out);
      out.push_back(']');
    }
    return out;
  }

  void statement(const Stmt& s, int depth) {
    const std::size_t id = sites.size();
    sites.push_back(Site{id, LineSpan{line_, line_}});
    sizes.push_back(1);
    nodes.push_back(&s);
    std::string head;
    switch (s.kind) {
      case StmtKind::Assign:
        head = lvalue(s) + " := ";
        print_expr(*s.value, head);
        emit(depth, head + ";");
        break;
      case StmtKind::Read:
        emit(depth, "read " + lvalue(s) + ";");
        break;
      case StmtKind::Print:
        head = "print ";
        print_expr(*s.value, head);
        emit(depth, head + ";");
        break;
      case StmtKind::PrintText:
        emit(depth, "print \"" + escape(s.text) + "\";");
        break;
      case StmtKind::Break:
        emit(depth, "break;");
        break;
      case StmtKind::Exit:
        emit(depth, "exit;");
        break;
      case StmtKind::If:
      case StmtKind::While:
        head = s.kind == StmtKind::If ? "if " : "while ";
        print_expr(*s.value, head);
        emit(depth, head + " {");
        list(s.body, depth + 1);
        if (s.has_else) {
          emit(depth, "} else {");
          list(s.orelse, depth + 1);
        }
        emit(depth, "}");
        break;
      case StmtKind::Block:
        emit(depth, "{");
        list(s.body, depth + 1);
        emit(depth, "}");
        break;
    }
    sites[id].span.last = line_ - 1;
    sizes[id] = sites.size() - id;
  }
};

bool check_breaks(const std::vector<Stmt>& stmts, int loops, std::string* why) {
  for (const Stmt& s : stmts) {
    if (s.kind == StmtKind::Break && loops == 0) {
      if (why) *why = "break outside of a loop";
      return false;
    }
    const int inner = loops + (s.kind == StmtKind::While ? 1 : 0);
    if (!check_breaks(s.body, inner, why)) return false;
    if (!check_breaks(s.orelse, inner, why)) return false;
  }
  return true;
}

}  // namespace

Expr Expr::integer(std::int64_t v) {
  Expr e;
  e.kind = ExprKind::Int;
  e.value = v;
  return e;
}

Expr Expr::variable(std::string name) {
  Expr e;
  e.kind = ExprKind::Var;
  e.name = std::move(name);
  return e;
}

TreeGenome::TreeGenome(std::vector<Stmt> statements)
    : statements_(std::move(statements)) {
  if (statements_.empty()) throw MutationError("program has no statements");
  Printer printer;
  printer.list(statements_, 0);
  text_ = std::move(printer.text);
  sites_ = std::move(printer.sites);
  subtree_sizes_ = std::move(printer.sizes);
  nodes_ = std::move(printer.nodes);
}

TreeGenome::TreeGenome(const TreeGenome& other)
    : TreeGenome(other.statements_) {}

TreeGenome& TreeGenome::operator=(const TreeGenome& other) {
  if (this != &other) *this = TreeGenome(other.statements_);
  return *this;
}

bool TreeGenome::nested(SiteId a, SiteId b) const {
  if (a > b) std::swap(a, b);
  return b < a + subtree_sizes_.at(a);
}

TreeGenome parse_tree(std::string_view source) {
  Parser parser(Lexer(source).run());
  return TreeGenome(parser.program());
}

std::string serialize(const TreeGenome& genome) { return genome.text(); }

bool well_formed(const TreeGenome& genome, std::string* why) {
  return check_breaks(genome.statements(), 0, why);
}

}  // namespace mutrb
