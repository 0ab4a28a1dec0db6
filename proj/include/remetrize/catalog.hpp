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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "remetrize/dsl.hpp"
#include "remetrize/luzin.hpp"
#include "remetrize/sum_space.hpp"
#include "remetrize/tree.hpp"
#include "remetrize/witness.hpp"

namespace remetrize {

// Trees.
PrunedTree full_tree();                         // all of Baire space
PrunedTree cantor_tree();                       // entries <= 1
PrunedTree bounded_tree(std::uint64_t max_entry);
PrunedTree constant_entry_tree(std::uint64_t value);
PrunedTree discrete_tree(std::uint64_t n);      // the constant sequences below n
/// Union of the cylinders N_c, optionally inside entries <= entry_max.
PrunedTree cylinder_union_tree(std::vector<Sequence> cylinders,
                               std::optional<std::uint64_t> entry_max);
/// node(u) = predicate(a = u).
PrunedTree dsl_tree(const DslExpr& predicate, std::uint64_t child_bound);
/// Entries <= 2, no immediate repetition of a nonzero entry.
PrunedTree no_repeat_tree();
/// Listed nodes up to `depth`; below depth the continuation tree applies to
/// the part of the sequence after position `depth`.
PrunedTree explicit_tree(std::vector<Sequence> nodes, std::uint64_t depth,
                         PrunedTree continuation);
/// Branches (N, alpha) with alpha binary, alpha(i) = 1 for i >= N and N least.
PrunedTree eventually_ones_tree();

/// full, cantor, bounded-2, constant-entry-3, no-repeat, cylinder-union.
PrunedTree tree_by_name(std::string_view name);
std::vector<std::string> tree_names();

// Matrices R(alpha, n, m) with their use bounds.
Pi02Matrix copy_matrix(std::uint64_t budget);               // m = alpha(n)
Pi02Matrix zero_ahead_matrix(std::uint64_t budget);         // alpha(n+m) = 0
Pi02Matrix changes_matrix(std::uint64_t budget);            // alpha(n+m) != alpha(n+m+1)
Pi02Matrix divergent_sum_matrix(std::uint64_t budget);      // alpha(0)+...+alpha(m) >= n
Pi02Matrix first_two_matrix(std::uint64_t budget);          // alpha(m) = 2
Pi02Matrix dsl_matrix(std::string name, const DslExpr& relation, const DslExpr& use_bound,
                      std::uint64_t budget);

Pi02Matrix matrix_by_name(std::string_view name, std::uint64_t budget);
std::vector<std::string> matrix_names();

// Named re-metrization instances.
struct RemetrizeInstance {
  std::string id;
  AmbientSpace ambient;
  std::optional<ClosedRepresentation> part_a;   // empty: A is empty
  std::optional<ClosedRepresentation> part_ac;  // empty: A is everything
  std::vector<Pi02Matrix> matrices;             // matrices behind witness sides
};

RemetrizeInstance remetrize_instance_by_name(std::string_view name, std::uint64_t witness_bound);
std::vector<std::string> remetrize_instance_names();

/// A dense point strictly inside an ambient basic ball.
struct CertifiedBall {
  TaggedIndex point;
  SeqCode center;
  Rational radius;
};

/// For admissible codes below point_bound on each side: the whole space
/// (radius 2) and the balls of radius 1/(j+1) centred at the code of the
/// point's first j+1 entries, for j < depth.
std::vector<CertifiedBall> certified_balls(const SumSpace& space, std::uint64_t point_bound,
                                           std::uint64_t depth);

// Zero-dimensional spaces for Luzin schemes.
ZeroDimPresentation luzin_space_by_name(std::string_view name);
std::vector<std::string> luzin_space_names();

}  // namespace remetrize
