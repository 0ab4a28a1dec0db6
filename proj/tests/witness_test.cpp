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

#include "remetrize/witness.hpp"

#include <gtest/gtest.h>

#include <random>

#include "remetrize/baire.hpp"
#include "remetrize/catalog.hpp"
#include "remetrize/errors.hpp"
#include "remetrize/tree.hpp"

namespace remetrize {
namespace {

Sequence seq(std::initializer_list<std::uint64_t> values) {
  Sequence out;
  for (auto v : values) out.push_back(nat_from_u64(v));
  return out;
}

BairePoint random_point(std::mt19937_64& rng, std::uint64_t max_entry, std::uint64_t length) {
  Sequence pre;
  for (std::uint64_t i = 0; i < length; ++i) pre.push_back(nat_from_u64(rng() % (max_entry + 1)));
  // The period contains a zero, a change and a positive entry, so every
  // catalog matrix has witnesses at every n.
  return BairePoint::eventually_periodic(pre, seq({2, 0, 1}));
}

TEST(Witness, NoWitnessExhaustsTheBudget) {
  const WitnessClosure w(zero_ahead_matrix(100));
  const BairePoint beta = w.witness_point(BairePoint::constant(1));
  EXPECT_THROW(beta(0), WitnessSearchExhausted);
}

TEST(Witness, WitnessesMatchDirectFormulas) {
  std::mt19937_64 rng(11);
  const WitnessClosure copy(copy_matrix(256));
  const WitnessClosure ahead(zero_ahead_matrix(256));
  const WitnessClosure sum(divergent_sum_matrix(256));
  for (int trial = 0; trial < 50; ++trial) {
    const BairePoint a = random_point(rng, 2, 10);
    const Sequence p = a.prefix(80);
    // Copy: the witness is the point itself.
    EXPECT_EQ(copy.witness_point(a).prefix(10), a.prefix(10));
    for (std::uint64_t n = 0; n < 10; ++n) {
      // Zero ahead: distance from n to the next zero.
      std::uint64_t gap = 0;
      while (p[n + gap] != 0 && n + gap + 1 < p.size()) ++gap;
      if (p[n + gap] == 0) {
        EXPECT_EQ(ahead.witness_point(a)(n), nat_from_u64(gap));
      }
      // Divergent sum: the first m whose partial sum reaches n.
      Nat total = 0;
      std::uint64_t m = 0;
      while ((total += p[m]) < nat_from_u64(n) && m + 1 < p.size()) ++m;
      if (total >= nat_from_u64(n)) {
        EXPECT_EQ(sum.witness_point(a)(n), nat_from_u64(m));
      }
    }
  }
}

TEST(Witness, ClosureHoldsForTheWitness) {
  const WitnessClosure w(first_two_matrix(8));
  const BairePoint a = BairePoint::from_prefix(seq({0, 1, 2, 0}));
  const BairePoint beta = w.witness_point(a);
  EXPECT_EQ(beta.prefix(3), seq({2, 2, 2}));
  EXPECT_TRUE(w.check_closure(a, beta, 16));
  EXPECT_EQ(w.inverse(a).prefix(6), seq({0, 2, 1, 2, 2, 2}));
}

TEST(Witness, PerturbedWitnessesFail) {
  const WitnessClosure w(zero_ahead_matrix(64));
  const BairePoint a = BairePoint::from_prefix(seq({1, 1, 0, 1}));
  const BairePoint beta = w.witness_point(a);
  ASSERT_EQ(beta(0), 2);
  auto with_first = [&beta](std::uint64_t v) {
    return BairePoint::from_rule([beta, v](BairePoint::Position n) { return n == 0 ? nat_from_u64(v) : beta(n); });
  };
  EXPECT_FALSE(w.check_closure(a, with_first(3), 1));  // not least
  EXPECT_FALSE(w.check_closure(a, with_first(1), 1));  // relation false below the witness
  EXPECT_TRUE(w.check_closure(a, with_first(2), 1));
}

TEST(Witness, ContinuityModulus) {
  const WitnessClosure w(zero_ahead_matrix(64));
  const BairePoint a = BairePoint::from_prefix(seq({1, 1, 0, 1, 0}));
  EXPECT_EQ(w.continuity_modulus(a, 0), 0U);
  // beta(0) = 2 reads a(0..2), beta(1) = 1 reads a(1..2).
  EXPECT_EQ(w.continuity_modulus(a, 2), 3U);
}

TEST(Witness, ModulusIsSoundUnderTailChanges) {
  std::mt19937_64 rng(5);
  for (const auto& matrix : {changes_matrix(64), zero_ahead_matrix(64), divergent_sum_matrix(64)}) {
    const WitnessClosure w(matrix);
    for (int trial = 0; trial < 100; ++trial) {
      const BairePoint a = random_point(rng, 2, 12);
      const std::uint64_t n = 1 + rng() % 6;
      const std::uint64_t modulus = w.continuity_modulus(a, n);
      const Sequence head = a.prefix(modulus);
      const Sequence beta = w.witness_point(a).prefix(n);
      for (int tail = 0; tail < 10; ++tail) {
        Sequence pre = head;
        for (int i = 0; i < 8; ++i) pre.push_back(nat_from_u64(rng() % 3));
        const BairePoint b = BairePoint::eventually_periodic(pre, seq({1, 0}));
        EXPECT_EQ(w.witness_point(b).prefix(n), beta) << matrix.name;
      }
    }
  }
}

TEST(Witness, TreeContainsTheGraphOfTheWitness) {
  const WitnessClosure w(first_two_matrix(8));
  const PrunedTree ambient = bounded_tree(2);
  const PrunedTree t = w.tree(ambient, 8);
  EXPECT_TRUE(validate_pruned(t, 4).ok());
  const BairePoint a = BairePoint::from_prefix(seq({1, 2, 0}));
  const Sequence z = w.inverse(a).prefix(8);
  for (std::size_t n = 0; n <= z.size(); ++n) EXPECT_TRUE(t.node(std::span<const Nat>(z).first(n)));
  // A wrong witness at position 1 leaves the tree once the position that
  // refutes it becomes visible.
  EXPECT_FALSE(t.node(seq({1, 0})));
  // No ambient continuation of [0, 0, 0] has a 2 at position 0.
  EXPECT_FALSE(t.node(seq({0, 0})));
  // Entries past the ambient bound are rejected.
  EXPECT_FALSE(t.node(seq({3})));
}

TEST(Witness, TreeRejectsUnreachableWitnesses) {
  // Over Cantor space no entry equals 2, so the first-two set is empty: no
  // witness value is consistent, and validation reports the dead end.
  const WitnessClosure w(first_two_matrix(8));
  const PrunedTree t = w.tree(cantor_tree(), 8);
  for (std::uint64_t a0 = 0; a0 <= 1; ++a0) {
    for (std::uint64_t b0 = 0; b0 <= 8; ++b0) EXPECT_FALSE(t.node(seq({a0, b0})));
  }
  EXPECT_FALSE(validate_pruned(t, 2).ok());
}

}  // namespace
}  // namespace remetrize
