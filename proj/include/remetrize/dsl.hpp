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

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "remetrize/rational.hpp"

namespace remetrize {

/// Variables visible to an expression: the sequence a (a decoded node or a
/// prefix of a point), its length `len`, and the indices n and m.
struct DslContext {
  std::span<const Nat> a;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
};

/// A small language of decidable predicates over natural numbers.
///
///   expr   := or
///   or     := and ('||' and)*
///   and    := not ('&&' not)*
///   not    := '!' not | cmp
///   cmp    := sum (('<' | '<=' | '>' | '>=' | '==' | '!=') sum)?
///   sum    := prod (('+' | '-') prod)*          '-' truncates at 0
///   prod   := atom (('*' | '/' | '%') atom)*
///   atom   := NUMBER | 'true' | 'false' | 'len' | 'n' | 'm' | NAME
///           | 'a' '(' expr ')' | ('min' | 'max') '(' expr ',' expr ')'
///           | '(' expr ')'
///           | ('exists' | 'forall') NAME '<' expr ':' expr
///
/// Truth is "nonzero"; comparisons and connectives yield 0 or 1. Every
/// quantifier needs a '<' bound, so evaluation always terminates.
class DslExpr {
 public:
  /// Throws ParseError with 1-based line and column inside `text`.
  static DslExpr parse(std::string_view text);

  /// Throws DslEvaluationError on a read of a(i) with i >= len, on division
  /// by zero, or on a quantifier bound beyond 2^32.
  Nat evaluate(const DslContext& ctx) const;
  bool test(const DslContext& ctx) const { return evaluate(ctx) != 0; }

  const std::string& source() const { return source_; }

  struct Node;

 private:
  DslExpr(std::shared_ptr<const Node> root, std::string source)
      : root_(std::move(root)), source_(std::move(source)) {}

  std::shared_ptr<const Node> root_;
  std::string source_;
};

}  // namespace remetrize
