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

#include "remetrize/tree.hpp"

#include <gtest/gtest.h>

#include "remetrize/baire.hpp"
#include "remetrize/catalog.hpp"
#include "remetrize/codes.hpp"
#include "remetrize/dsl.hpp"
#include "remetrize/errors.hpp"

namespace remetrize {
namespace {

Sequence seq(std::initializer_list<std::uint64_t> values) {
  Sequence out;
  for (auto v : values) out.push_back(nat_from_u64(v));
  return out;
}

// Trees with a known shape, used across the family tests.
std::vector<PrunedTree> small_catalog() {
  return {full_tree(),
          cantor_tree(),
          constant_entry_tree(3),
          cylinder_union_tree({seq({0, 1}), seq({1})}, 1),
          dsl_tree(DslExpr::parse("forall i < len : a(i) <= 2 && (i == 0 || a(i) != a(i-1))"), 2),
          no_repeat_tree()};
}

// p_N of two points from their first disagreement within `horizon`; 0 when
// none is found there.
Rational oracle_distance(const BairePoint& a, const BairePoint& b, std::uint64_t horizon) {
  const Sequence u = a.prefix(horizon), v = b.prefix(horizon);
  for (std::uint64_t i = 0; i < horizon; ++i) {
    if (u[i] != v[i]) return Rational(1, nat_from_u64(i + 1));
  }
  return Rational(0);
}

TEST(Tree, ValidateFullAndConstantTrees) {
  EXPECT_TRUE(validate_pruned(full_tree(), 5).ok());
  const ValidationReport r = validate_pruned(constant_entry_tree(3), 4);
  EXPECT_TRUE(r.ok());
  // Exhaustive count: the root plus one node per level, each scanning the
  // children 0..3.
  EXPECT_EQ(r.nodes_checked, 5U);
}

TEST(Tree, RootOnlyTreeIsNotPruned) {
  const PrunedTree root_only([](std::span<const Nat> u) { return u.empty(); },
                             [](std::span<const Nat>) -> std::uint64_t { return 0; }, "root-only");
  const ValidationReport r = validate_pruned(root_only, 3);
  ASSERT_EQ(r.violations.size(), 1U);
  EXPECT_EQ(r.violations[0].kind, Violation::Kind::Prunedness);
  EXPECT_TRUE(r.violations[0].node.empty());
  EXPECT_EQ(r.violations[0].kind_name(), "PrunednessViolation");
}

TEST(Tree, EmptyTreeIsReported) {
  const PrunedTree empty([](std::span<const Nat>) { return false; },
                         [](std::span<const Nat>) -> std::uint64_t { return 0; }, "empty");
  const ValidationReport r = validate_pruned(empty, 2);
  ASSERT_EQ(r.violations.size(), 1U);
  EXPECT_EQ(r.violations[0].kind, Violation::Kind::EmptyTree);
}

TEST(Tree, BrokenDownwardClosureIsReported) {
  // [1,1] is listed but its parent [1] is not.
  const PrunedTree t = explicit_tree({seq({}), seq({0}), seq({0, 0}), seq({0, 1}), seq({1, 1})}, 2,
                                     cantor_tree());
  const ValidationReport r = validate_pruned(t, 4);
  ASSERT_FALSE(r.ok());
  bool found = false;
  for (const auto& v : r.violations) {
    if (v.kind == Violation::Kind::DownwardClosure && v.node == seq({1}) && v.child == Nat(1)) found = true;
  }
  EXPECT_TRUE(found);
  EXPECT_EQ(t.depth_validated(), 0U);
}

TEST(Tree, ValidationRecordsDepth) {
  const PrunedTree t = bounded_tree(2);
  EXPECT_TRUE(validate_pruned(t, 3).ok());
  EXPECT_EQ(t.depth_validated(), 3U);
}

TEST(DenseFamily, LeftmostExamples) {
  const DensePointFamily full(full_tree());
  EXPECT_EQ(full.leftmost(SeqCode(std::uint64_t{0})).prefix(5), seq({0, 0, 0, 0, 0}));
  EXPECT_EQ(full.leftmost(encode({7})).prefix(4), seq({7, 0, 0, 0}));
  const DensePointFamily threes(constant_entry_tree(3));
  EXPECT_EQ(threes.leftmost(SeqCode(std::uint64_t{0})).prefix(4), seq({3, 3, 3, 3}));
}

TEST(DenseFamily, InadmissibleIndicesFallBackToBase) {
  const DensePointFamily threes(constant_entry_tree(3));
  EXPECT_FALSE(threes.admissible(encode({1})));
  EXPECT_EQ(threes.effective_index(encode({1})), threes.base_index());
  EXPECT_EQ(threes.leftmost(encode({1})).prefix(3), seq({3, 3, 3}));
}

TEST(DenseFamily, LeftmostThroughAgreesWithLeftmost) {
  const DensePointFamily fam(no_repeat_tree());
  const Sequence u = seq({2, 0, 1});
  EXPECT_EQ(fam.leftmost_through(u).prefix(8), fam.leftmost(encode(u)).prefix(8));
}

TEST(DenseFamily, EqualityExamples) {
  const DensePointFamily full(full_tree());
  EXPECT_TRUE(full.equal(encode({0}), encode({0, 0})));
  EXPECT_FALSE(full.equal(encode({0}), encode({1})));
  EXPECT_TRUE(full.equal(encode({4, 2}), encode({4, 2})));
}

TEST(DenseFamily, DistanceRelationExamples) {
  const DensePointFamily full(full_tree());
  const SeqCode s = encode({0}), t = encode({1});
  EXPECT_TRUE(full.distance_lt(s, encode({0, 0}), 1, 0));
  EXPECT_FALSE(full.distance_lt(s, t, 1, 1));
  EXPECT_TRUE(full.distance_le(s, t, 1, 0));
  EXPECT_FALSE(full.distance_lt(s, s, 0, 0));
  EXPECT_TRUE(full.distance_le(s, s, 0, 0));
  EXPECT_EQ(full.distance(s, t), Rational(1));
  EXPECT_EQ(full.first_disagreement(encode({3, 1}), encode({3, 2})), std::optional<std::uint64_t>(1));
}

TEST(DenseFamily, LeftmostStaysInTreeAndInItsCylinder) {
  for (const auto& tree : small_catalog()) {
    ASSERT_TRUE(validate_pruned(tree, 4).ok()) << tree.description();
    const DensePointFamily fam(tree);
    for (std::uint64_t n = 0; n < 400; ++n) {
      const SeqCode s(n);
      if (!fam.admissible(s) || lh(s) > 4) continue;
      const BairePoint x = fam.leftmost(s);
      EXPECT_TRUE(in_basic_nbhd(x, s)) << tree.description() << " " << n;
      const Sequence p = x.prefix(8);
      for (std::size_t len = 0; len <= p.size(); ++len) {
        EXPECT_TRUE(tree.node(std::span<const Nat>(p).first(len))) << tree.description() << " " << n;
      }
    }
  }
}

TEST(DenseFamily, RelationsAgreeWithPointOracle) {
  // Exhaustive over the first 60 codes on each catalog tree, thresholds
  // m/(k+1) with m, k <= 3.
  for (const auto& tree : small_catalog()) {
    const DensePointFamily fam(tree);
    std::vector<BairePoint> points;
    for (std::uint64_t s = 0; s < 60; ++s) points.push_back(fam.leftmost(SeqCode(s)));
    for (std::uint64_t s = 0; s < 60; ++s) {
      for (std::uint64_t t = 0; t < 60; ++t) {
        const Rational d = oracle_distance(points[s], points[t], 40);
        EXPECT_EQ(fam.distance(SeqCode(s), SeqCode(t)), d);
        EXPECT_EQ(fam.equal(SeqCode(s), SeqCode(t)), d == Rational(0));
        for (std::uint64_t m = 0; m <= 3; ++m) {
          for (std::uint64_t k = 0; k <= 3; ++k) {
            const Rational q(nat_from_u64(m), nat_from_u64(k + 1));
            EXPECT_EQ(fam.distance_lt(SeqCode(s), SeqCode(t), m, k), d < q);
            EXPECT_EQ(fam.distance_le(SeqCode(s), SeqCode(t), m, k), d <= q);
          }
        }
      }
    }
  }
}

TEST(DenseFamily, MetricAxiomsOnDensePoints) {
  for (const auto& tree : {full_tree(), cantor_tree(), no_repeat_tree()}) {
    const DensePointFamily fam(tree);
    const auto violations = check_axioms(
        120, [&fam](std::uint64_t i, std::uint64_t j) { return fam.distance(SeqCode(i), SeqCode(j)); },
        [&fam](std::uint64_t i, std::uint64_t j) { return fam.equal(SeqCode(i), SeqCode(j)); });
    EXPECT_TRUE(violations.empty()) << tree.description() << ": " << violations.front().str();
  }
}

}  // namespace
}  // namespace remetrize
