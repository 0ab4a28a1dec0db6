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

#include "remetrize/luzin.hpp"

#include <gtest/gtest.h>

#include "remetrize/catalog.hpp"
#include "remetrize/coding.hpp"
#include "remetrize/errors.hpp"

namespace remetrize {
namespace {

Sequence seq(std::initializer_list<std::uint64_t> values) {
  Sequence out;
  for (auto v : values) out.push_back(nat_from_u64(v));
  return out;
}

// On Cantor space with r_i = the binary digits of i, level l of the scheme
// uses balls of rescaled radius 1/(2^{l+2}+1), i.e. agreement on the first
// 2^{l+2} digits. The least dense index agreeing with x there is the number
// those digits spell, and it lies in the parent cell, so f(x)(l) is that
// number.
std::uint64_t cantor_cell_oracle(std::uint64_t i, std::uint64_t level) {
  const std::uint64_t digits = std::uint64_t{1} << (level + 2);
  return digits >= 64 ? i : (i & ((std::uint64_t{1} << digits) - 1));
}

LuzinScheme cantor_scheme() { return LuzinScheme(cantor_presentation(), 4); }

TEST(Luzin, RescaleValues) {
  EXPECT_EQ(rescale(Rational(0)), Rational(0));
  EXPECT_EQ(rescale(Rational(1)), Rational(1, 2));
  EXPECT_EQ(rescale(Rational(3)), Rational(3, 4));
}

TEST(Luzin, RescaledBallMembership) {
  const ZeroDimPresentation space = rescale(cantor_presentation());
  const BairePoint x = cantor_presentation().dense(5);
  EXPECT_FALSE(space.ball_member(x, 5, Rational(0)));
  EXPECT_TRUE(space.ball_member(x, 4, Rational(1)));
  // d(r_5, r_4) = 1 before rescaling, 1/2 after.
  EXPECT_FALSE(space.ball_member(x, 4, Rational(1, 2)));
  EXPECT_TRUE(space.ball_member(x, 4, Rational(2, 3)));
  EXPECT_EQ(space.dist(5, 4), Rational(1, 2));
}

TEST(Luzin, NonUltrametricSpacesAreRejected) {
  ZeroDimPresentation p = cantor_presentation();
  p.ultrametric = false;
  EXPECT_THROW(LuzinScheme(p, 4), NotUltrametric);
}

TEST(Luzin, RootCellIsEverything) {
  const LuzinScheme scheme = cantor_scheme();
  for (std::uint64_t i = 0; i < 20; ++i) {
    EXPECT_TRUE(scheme.cell_member(cantor_presentation().dense(i), SeqCode(std::uint64_t{0})));
  }
}

TEST(Luzin, DepthOneCellOfZero) {
  const LuzinScheme scheme = cantor_scheme();
  const BairePoint zero;
  EXPECT_TRUE(scheme.cell_member(zero, seq({0})));
  for (std::uint64_t k = 1; k < 40; ++k) EXPECT_FALSE(scheme.cell_member(zero, seq({k})));
}

TEST(Luzin, EmbeddingMatchesDigitOracle) {
  const LuzinScheme scheme = cantor_scheme();
  for (std::uint64_t i = 0; i < 4096; i += 37) {
    const BairePoint f = scheme.embed_dense(i);
    for (std::uint64_t l = 0; l < 4; ++l) EXPECT_EQ(f(l), nat_from_u64(cantor_cell_oracle(i, l))) << i;
  }
  for (std::uint64_t i = 0; i < 256; i += 5) {
    const BairePoint f = scheme.embed(cantor_presentation().dense(i));
    EXPECT_EQ(f.prefix(4), scheme.embed_dense(i).prefix(4));
  }
}

TEST(Luzin, EmbeddingLandsInItsCells) {
  const LuzinScheme scheme = cantor_scheme();
  for (std::uint64_t i = 0; i < 30; ++i) {
    const BairePoint x = cantor_presentation().dense(i);
    const Sequence f = scheme.embed(x).prefix(4);
    for (std::size_t n = 0; n <= f.size(); ++n) {
      EXPECT_TRUE(scheme.cell_member(x, std::span<const Nat>(f).first(n)));
    }
  }
}

TEST(Luzin, CellsRefineAndPartition) {
  const LuzinScheme scheme = cantor_scheme();
  const std::vector<Sequence> cells = {seq({}), seq({1}), seq({5}), seq({5, 21}), seq({5, 37})};
  for (std::uint64_t i = 0; i < 64; ++i) {
    for (const auto& s : cells) {
      if (!scheme.dense_cell_member(i, s)) continue;
      int children = 0;
      for (std::uint64_t k = 0; k <= 256; ++k) {
        Sequence child = s;
        child.push_back(nat_from_u64(k));
        if (scheme.dense_cell_member(i, child)) ++children;
      }
      EXPECT_EQ(children, 1) << i << " " << to_string(s);
    }
    for (std::uint64_t k = 0; k < 20; ++k) {
      if (scheme.dense_cell_member(i, seq({3, k}))) {
        EXPECT_TRUE(scheme.dense_cell_member(i, seq({3})));
      }
    }
  }
}

TEST(Luzin, CellDiameterShrinks) {
  const LuzinScheme scheme = cantor_scheme();
  for (std::uint64_t i = 0; i < 30; ++i) {
    for (std::uint64_t j = 0; j < 30; ++j) {
      const Sequence fi = scheme.embed_dense(i).prefix(4);
      const Sequence fj = scheme.embed_dense(j).prefix(4);
      std::uint64_t shared = 0;
      while (shared < 4 && fi[shared] == fj[shared]) ++shared;
      EXPECT_LT(scheme.space().dist(i, j), Rational::pow2_inverse(shared)) << i << " " << j;
    }
  }
}

TEST(Luzin, ImageNodeExamples) {
  const LuzinScheme scheme = cantor_scheme();
  EXPECT_TRUE(scheme.image_node(SeqCode(std::uint64_t{0})));
  EXPECT_TRUE(scheme.image_node(seq({0})));
  // A_[k] is nonempty exactly for k < 16, and A_[3,j] for j < 256 with
  // j = 3 mod 16.
  EXPECT_TRUE(scheme.image_node(seq({15})));
  EXPECT_FALSE(scheme.image_node(seq({16})));
  EXPECT_TRUE(scheme.image_node(seq({3, 19})));
  EXPECT_FALSE(scheme.image_node(seq({3, 4})));
}

TEST(Luzin, ImageTreeIsPruned) {
  const LuzinScheme scheme = cantor_scheme();
  const PrunedTree image = scheme.image_tree();
  for (std::uint64_t k = 0; k < 16; ++k) {
    bool child = false;
    for (std::uint64_t j = 0; j <= image.child_bound(seq({k})) && !child; ++j) child = image.node(seq({k, j}));
    EXPECT_TRUE(child) << k;
  }
}

TEST(Luzin, InverseBallExamples) {
  const LuzinScheme scheme = cantor_scheme();
  const BairePoint f0 = scheme.embed_dense(0);
  const BairePoint f1 = scheme.embed_dense(1);
  const Nat half = index_of_rational(Rational(1, 2));
  EXPECT_TRUE(scheme.inverse_ball(f0, 0, half, 4));
  EXPECT_FALSE(scheme.inverse_ball(f0, 0, index_of_rational(Rational(0)), 4));
  EXPECT_FALSE(scheme.inverse_ball(f0, 0, index_of_rational(Rational(-1, 3)), 4));
  for (std::uint64_t depth = 0; depth <= 6; ++depth) EXPECT_FALSE(scheme.inverse_ball(f1, 0, half, depth));
}

TEST(Luzin, ImagePresentationDistances) {
  const LuzinScheme scheme = cantor_scheme();
  const ImagePresentation image =
      scheme.image_presentation([](std::uint64_t i, std::uint64_t j) { return i != j; });
  EXPECT_EQ(image.distance(3, 3), Rational(0));
  EXPECT_EQ(image.distance(0, 1), Rational(1));
  // r_1 and r_17 share the depth-1 cell [1] and split below it.
  EXPECT_EQ(image.distance(1, 17), Rational(1, 2));
}

TEST(Luzin, OtherPresentations) {
  const LuzinScheme discrete(discrete_presentation(3), 3);
  EXPECT_EQ(discrete.embed_dense(2).prefix(3), seq({2, 2, 2}));
  EXPECT_TRUE(discrete.image_node(seq({2})));
  EXPECT_FALSE(discrete.image_node(seq({3})));
  const LuzinScheme closed(closed_subset_presentation(DensePointFamily(no_repeat_tree())), 3);
  EXPECT_TRUE(closed.image_node(seq({0})));
}

}  // namespace
}  // namespace remetrize
