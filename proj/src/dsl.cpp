// Copyright 2026 The remetrize Authors
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

#include "remetrize/dsl.hpp"

#include <cctype>
#include <vector>

#include "remetrize/errors.hpp"

namespace remetrize {

enum class Op {
  Const, Len, VarN, VarM, Bound, Access, Min, Max,
  Add, Sub, Mul, Div, Mod,
  Lt, Le, Gt, Ge, Eq, Ne,
  And, Or, Not, Exists, Forall,
};

struct DslExpr::Node {
  Op op;
  Nat value;           // Const
  std::size_t slot = 0;  // Bound, Exists, Forall
  std::vector<std::shared_ptr<const Node>> kids;
};

namespace {

using NodePtr = std::shared_ptr<const DslExpr::Node>;

constexpr std::uint64_t kMaxQuantifierBound = std::uint64_t{1} << 32;

struct Token {
  enum class Kind { Number, Name, Symbol, End };
  Kind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1, column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t count) {
    for (std::size_t k = 0; k < count; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const std::size_t start_line = line, start_col = column;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Token::Kind::Number, std::string(text.substr(i, j - i)), start_line, start_col});
      advance(j - i);
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
        ++j;
      }
      out.push_back({Token::Kind::Name, std::string(text.substr(i, j - i)), start_line, start_col});
      advance(j - i);
      continue;
    }
    static constexpr std::string_view kTwoChar[] = {"<=", ">=", "==", "!=", "&&", "||"};
    std::string symbol(1, c);
    for (std::string_view two : kTwoChar) {
      if (text.substr(i, 2) == two) symbol = std::string(two);
    }
    if (symbol.size() == 1 && std::string_view("()<>!+-*/%,:").find(c) == std::string_view::npos) {
      throw ParseError(line, column, std::string("unexpected character '") + c + "'");
    }
    out.push_back({Token::Kind::Symbol, symbol, start_line, start_col});
    advance(symbol.size());
  }
  out.push_back({Token::Kind::End, "", line, column});
  return out;
}

NodePtr make(Op op, std::vector<NodePtr> kids = {}) {
  auto node = std::make_shared<DslExpr::Node>();
  node->op = op;
  node->kids = std::move(kids);
  return node;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  NodePtr parse_all() {
    NodePtr root = parse_or();
    if (peek().kind != Token::Kind::End) fail(peek(), "unexpected '" + peek().text + "'");
    return root;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& take() { return tokens_[pos_++]; }

  bool accept(std::string_view symbol) {
    if (peek().kind == Token::Kind::Symbol && peek().text == symbol) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(std::string_view symbol) {
    if (!accept(symbol)) {
      fail(peek(), "expected '" + std::string(symbol) + "'" +
                       (peek().kind == Token::Kind::End ? " at end of input"
                                                        : " before '" + peek().text + "'"));
    }
  }

  [[noreturn]] static void fail(const Token& at, const std::string& message) {
    throw ParseError(at.line, at.column, message);
  }

  NodePtr parse_or() {
    NodePtr lhs = parse_and();
    while (accept("||")) lhs = make(Op::Or, {lhs, parse_and()});
    return lhs;
  }

  NodePtr parse_and() {
    NodePtr lhs = parse_not();
    while (accept("&&")) lhs = make(Op::And, {lhs, parse_not()});
    return lhs;
  }

  NodePtr parse_not() {
    if (accept("!")) return make(Op::Not, {parse_not()});
    return parse_cmp();
  }

  NodePtr parse_cmp() {
    NodePtr lhs = parse_sum();
    static const std::pair<std::string_view, Op> kOps[] = {
        {"<=", Op::Le}, {">=", Op::Ge}, {"==", Op::Eq}, {"!=", Op::Ne}, {"<", Op::Lt}, {">", Op::Gt}};
    for (const auto& [symbol, op] : kOps) {
      if (accept(symbol)) return make(op, {lhs, parse_sum()});
    }
    return lhs;
  }

  NodePtr parse_sum() {
    NodePtr lhs = parse_prod();
    for (;;) {
      if (accept("+")) {
        lhs = make(Op::Add, {lhs, parse_prod()});
      } else if (accept("-")) {
        lhs = make(Op::Sub, {lhs, parse_prod()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_prod() {
    NodePtr lhs = parse_atom();
    for (;;) {
      if (accept("*")) {
        lhs = make(Op::Mul, {lhs, parse_atom()});
      } else if (accept("/")) {
        lhs = make(Op::Div, {lhs, parse_atom()});
      } else if (accept("%")) {
        lhs = make(Op::Mod, {lhs, parse_atom()});
      } else {
        return lhs;
      }
    }
  }

  NodePtr parse_atom() {
    const Token& tok = take();
    switch (tok.kind) {
      case Token::Kind::Number: {
        auto node = std::make_shared<DslExpr::Node>();
        node->op = Op::Const;
        node->value = Nat(tok.text);
        return node;
      }
      case Token::Kind::Symbol:
        if (tok.text == "(") {
          NodePtr inner = parse_or();
          expect(")");
          return inner;
        }
        fail(tok, "unexpected '" + tok.text + "'");
      case Token::Kind::End:
        fail(tok, "unexpected end of input");
      case Token::Kind::Name:
        break;
    }
    const std::string& name = tok.text;
    for (std::size_t k = scope_.size(); k-- > 0;) {
      if (scope_[k] == name) {
        auto node = std::make_shared<DslExpr::Node>();
        node->op = Op::Bound;
        node->slot = k;
        return node;
      }
    }
    if (name == "true" || name == "false") {
      auto node = std::make_shared<DslExpr::Node>();
      node->op = Op::Const;
      node->value = name == "true" ? 1 : 0;
      return node;
    }
    if (name == "len") return make(Op::Len);
    if (name == "n") return make(Op::VarN);
    if (name == "m") return make(Op::VarM);
    if (name == "a") {
      expect("(");
      NodePtr index = parse_or();
      expect(")");
      return make(Op::Access, {index});
    }
    if (name == "min" || name == "max") {
      expect("(");
      NodePtr lhs = parse_or();
      expect(",");
      NodePtr rhs = parse_or();
      expect(")");
      return make(name == "min" ? Op::Min : Op::Max, {lhs, rhs});
    }
    if (name == "exists" || name == "forall") return parse_quantifier(tok);
    fail(tok, "unknown name '" + name + "'");
  }

  NodePtr parse_quantifier(const Token& keyword) {
    const Token& var = take();
    if (var.kind != Token::Kind::Name) fail(var, "expected a variable after '" + keyword.text + "'");
    if (!accept("<")) {
      fail(peek(), "unbounded quantifier: '" + keyword.text + " " + var.text +
                       "' needs a bound '< expr'");
    }
    NodePtr bound = parse_sum();
    expect(":");
    scope_.push_back(var.text);
    NodePtr body = parse_or();
    scope_.pop_back();
    auto node = std::make_shared<DslExpr::Node>();
    node->op = keyword.text == "exists" ? Op::Exists : Op::Forall;
    node->slot = scope_.size();
    node->kids = {bound, body};
    return node;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<std::string> scope_;
};

class Evaluator {
 public:
  explicit Evaluator(const DslContext& ctx) : ctx_(ctx) {}

  Nat eval(const DslExpr::Node& node) {
    switch (node.op) {
      case Op::Const:
        return node.value;
      case Op::Len:
        return nat_from_u64(ctx_.a.size());
      case Op::VarN:
        return nat_from_u64(ctx_.n);
      case Op::VarM:
        return nat_from_u64(ctx_.m);
      case Op::Bound:
        return nat_from_u64(bound_[node.slot]);
      case Op::Access: {
        const Nat index = eval(*node.kids[0]);
        if (index >= nat_from_u64(ctx_.a.size())) {
          throw DslEvaluationError("a(" + index.get_str() + ") read beyond a prefix of length " +
                                   std::to_string(ctx_.a.size()));
        }
        return ctx_.a[to_u64(index)];
      }
      case Op::Min:
      case Op::Max: {
        Nat lhs = eval(*node.kids[0]);
        Nat rhs = eval(*node.kids[1]);
        return (node.op == Op::Min) == (lhs < rhs) ? lhs : rhs;
      }
      case Op::Add:
        return eval(*node.kids[0]) + eval(*node.kids[1]);
      case Op::Sub: {
        Nat diff = eval(*node.kids[0]) - eval(*node.kids[1]);
        return diff < 0 ? Nat(0) : diff;
      }
      case Op::Mul:
        return eval(*node.kids[0]) * eval(*node.kids[1]);
      case Op::Div:
      case Op::Mod: {
        const Nat lhs = eval(*node.kids[0]);
        const Nat rhs = eval(*node.kids[1]);
        if (rhs == 0) throw DslEvaluationError("division by zero");
        return node.op == Op::Div ? Nat(lhs / rhs) : Nat(lhs % rhs);
      }
      case Op::Lt:
        return truth(eval(*node.kids[0]) < eval(*node.kids[1]));
      case Op::Le:
        return truth(eval(*node.kids[0]) <= eval(*node.kids[1]));
      case Op::Gt:
        return truth(eval(*node.kids[0]) > eval(*node.kids[1]));
      case Op::Ge:
        return truth(eval(*node.kids[0]) >= eval(*node.kids[1]));
      case Op::Eq:
        return truth(eval(*node.kids[0]) == eval(*node.kids[1]));
      case Op::Ne:
        return truth(eval(*node.kids[0]) != eval(*node.kids[1]));
      case Op::And:
        return truth(eval(*node.kids[0]) != 0 && eval(*node.kids[1]) != 0);
      case Op::Or:
        return truth(eval(*node.kids[0]) != 0 || eval(*node.kids[1]) != 0);
      case Op::Not:
        return truth(eval(*node.kids[0]) == 0);
      case Op::Exists:
      case Op::Forall:
        return quantify(node);
    }
    throw DslEvaluationError("unknown operator");
  }

 private:
  static Nat truth(bool b) { return b ? 1 : 0; }

  Nat quantify(const DslExpr::Node& node) {
    const Nat bound = eval(*node.kids[0]);
    if (bound > nat_from_u64(kMaxQuantifierBound)) {
      throw DslEvaluationError("quantifier bound " + bound.get_str() + " exceeds 2^32");
    }
    const bool exists = node.op == Op::Exists;
    const std::uint64_t limit = to_u64(bound);
    bound_.resize(node.slot + 1);
    for (std::uint64_t k = 0; k < limit; ++k) {
      bound_[node.slot] = k;
      const bool holds = eval(*node.kids[1]) != 0;
      if (holds == exists) {
        bound_.resize(node.slot);
        return truth(exists);
      }
    }
    bound_.resize(node.slot);
    return truth(!exists);
  }

  const DslContext& ctx_;
  std::vector<std::uint64_t> bound_;
};

}  // namespace

DslExpr DslExpr::parse(std::string_view text) {
  Parser parser(lex(text));
  return DslExpr(parser.parse_all(), std::string(text));
}

Nat DslExpr::evaluate(const DslContext& ctx) const {
  Evaluator evaluator(ctx);
  return evaluator.eval(*root_);
}

}  // namespace remetrize
