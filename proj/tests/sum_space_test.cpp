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

#include "remetrize/sum_space.hpp"

#include <gtest/gtest.h>

#include "remetrize/catalog.hpp"
#include "remetrize/codes.hpp"
#include "remetrize/errors.hpp"

namespace remetrize {
namespace {

Sequence seq(std::initializer_list<std::uint64_t> values) {
  Sequence out;
  for (auto v : values) out.push_back(nat_from_u64(v));
  return out;
}

SumSpace catalog_sum(const std::string& name) {
  RemetrizeInstance inst = remetrize_instance_by_name(name, 8);
  return SumSpace(inst.ambient, *inst.part_a, *inst.part_ac);
}

Rational prefix_distance(const BairePoint& a, const BairePoint& b, std::uint64_t horizon) {
  const Sequence u = a.prefix(horizon), v = b.prefix(horizon);
  for (std::uint64_t i = 0; i < horizon; ++i) {
    if (u[i] != v[i]) return Rational(1, nat_from_u64(i + 1));
  }
  return Rational(0);
}

const SeqCode kRoot(std::uint64_t{0});

TEST(SumSpace, PullbackDistanceOnACylinder) {
  const SumSpace sum = catalog_sum("cantor-cylinder");
  EXPECT_EQ(sum.pullback_distance(Side::A, encode({0, 0}), encode({0, 0})), Rational(0));
  EXPECT_EQ(sum.pullback_distance(Side::A, encode({0, 0}), encode({0, 1})), Rational(1, 2));
}

TEST(SumSpace, DistanceBetweenAndWithinSides) {
  const SumSpace sum = catalog_sum("cantor-cylinder");
  const TaggedIndex a{Side::A, encode({0, 1})};
  const TaggedIndex ac{Side::Ac, encode({1})};
  EXPECT_EQ(sum.distance(a, ac), Rational(2));
  EXPECT_EQ(sum.distance(a, a), Rational(0));
  EXPECT_EQ(sum.distance(ac, {Side::Ac, encode({1, 1, 0, 1})}),
            sum.pullback_distance(Side::Ac, encode({1}), encode({1, 1, 0, 1})));
}

TEST(SumSpace, DistancesMatchPointOracle) {
  for (const std::string name : {"cantor-cylinder", "cantor-cylinder-union", "baire-closed-split"}) {
    const SumSpace sum = catalog_sum(name);
    for (std::uint64_t s = 0; s < 40; ++s) {
      for (std::uint64_t t = 0; t < 40; ++t) {
        for (Side side : {Side::A, Side::Ac}) {
          const DensePointFamily& fam = sum.family(side);
          const Rational oracle =
              prefix_distance(fam.leftmost(SeqCode(s)), fam.leftmost(SeqCode(t)), 40);
          EXPECT_EQ(sum.distance({side, SeqCode(s)}, {side, SeqCode(t)}), oracle) << name;
        }
      }
    }
  }
}

TEST(SumSpace, PresentationRelations) {
  const SumSpace sum = catalog_sum("cantor-cylinder");
  const SpacePresentation p = sum.presentation();
  const Nat i = SumSpace::index_of({Side::A, encode({0, 1})});
  const Nat j = SumSpace::index_of({Side::Ac, encode({1})});
  EXPECT_TRUE(p.less(i, i, 1, 0));
  EXPECT_FALSE(p.less(i, j, 2, 0));
  EXPECT_TRUE(p.less_equal(i, j, 2, 0));
  EXPECT_EQ(p.distance(i, j), Rational(2));
}

TEST(SumSpace, ResolveAndIndexOf) {
  const SumSpace sum = catalog_sum("cantor-cylinder");
  const TaggedIndex p{Side::Ac, encode({1, 0})};
  EXPECT_EQ(sum.resolve(SumSpace::index_of(p)), p);
  const TaggedIndex base{Side::A, sum.family(Side::A).base_index()};
  EXPECT_EQ(sum.resolve(0), base);
  EXPECT_EQ(sum.resolve(encode({2, 5}).value()), base);
  EXPECT_EQ(sum.resolve(encode({0, 1, 2}).value()), base);
}

TEST(SumSpace, EpsilonCode) {
  const SumSpace sum = catalog_sum("cantor-cylinder");
  const BairePoint eps = sum.epsilon_code();
  auto at = [&eps](std::uint64_t side, const SeqCode& s) {
    return eps(to_u64(pair_position(nat_from_u64(side), s.value())));
  };
  EXPECT_EQ(at(0, kRoot), 1);
  EXPECT_EQ(at(0, encode({1})), 0);
  EXPECT_EQ(at(0, encode({0, 1})), 1);
  EXPECT_EQ(at(1, encode({1})), 1);
  EXPECT_EQ(at(1, encode({0})), 0);
}

TEST(SumSpace, MembershipFromOneBall) {
  for (const std::string name : {"cantor-cylinder", "baire-closed-split", "cantor-infinitely-many-zeros"}) {
    const SumSpace sum = catalog_sum(name);
    for (std::uint64_t s = 0; s < 100; ++s) {
      EXPECT_TRUE(sum.member_of_a({Side::A, SeqCode(s)}));
      EXPECT_FALSE(sum.member_of_a({Side::Ac, SeqCode(s)}));
    }
  }
}

TEST(SumSpace, SidesAreDisjointSubsetsOfTheAmbientSpace) {
  const SumSpace sum = catalog_sum("baire-closed-split");
  for (std::uint64_t s = 0; s < 60; ++s) {
    const Sequence a = sum.point({Side::A, SeqCode(s)}).prefix(12);
    const Sequence ac = sum.point({Side::Ac, SeqCode(s)}).prefix(12);
    for (const Nat& v : a) EXPECT_LE(v, 1);
    // The complement side has a 2 no later than the witness bound.
    EXPECT_NE(std::find(ac.begin(), ac.begin() + 9, Nat(2)), ac.begin() + 9) << to_string(ac);
    for (const Nat& v : ac) EXPECT_LE(v, 2);
  }
}

TEST(SumSpace, ExtensionCertificates) {
  const SumSpace sum = catalog_sum("cantor-cylinder");
  const TaggedIndex p{Side::A, encode({0, 1, 1})};
  EXPECT_EQ(sum.extension_certificate(p, kRoot, Rational(2)), 0U);
  // V = points agreeing with 0,1,1,0,... on two positions. The identity
  // needs two agreeing positions, so k = 1.
  EXPECT_EQ(sum.extension_certificate(p, encode({0, 1}), Rational(1, 2)), 1U);
  EXPECT_THROW(sum.extension_certificate(p, encode({1}), Rational(1)), NotInterior);
  const ExtensionCheck check = sum.check_extension(p, encode({0, 1}), Rational(1, 2), 300);
  EXPECT_TRUE(check.ok());
  EXPECT_GT(check.sampled, 0U);
}

TEST(SumSpace, ExtensionCertificatesOverTheCatalog) {
  for (const std::string name : {"cantor-cylinder", "cantor-cylinder-union", "baire-closed-split",
                                 "cantor-infinitely-many-zeros"}) {
    const SumSpace sum = catalog_sum(name);
    for (const CertifiedBall& ball : certified_balls(sum, 20, 4)) {
      const ExtensionCheck check = sum.check_extension(ball.point, ball.center, ball.radius, 200);
      EXPECT_TRUE(check.ok()) << name << " " << ball.point.code.str();
    }
  }
}

TEST(SumSpace, ContinuityChecksPass) {
  const SumSpace sum = catalog_sum("baire-closed-split");
  for (Side side : {Side::A, Side::Ac}) {
    EXPECT_TRUE(sum.check_map_continuity(side, 60, 4).ok());
    EXPECT_TRUE(sum.check_inverse_continuity(side, 60, 4, 8).ok());
    EXPECT_TRUE(sum.check_injective(side, 60, 32).ok());
  }
}

TEST(SumSpace, ShiftRepresentationHasNoInverse) {
  const ClosedRepresentation rep = shift_representation(eventually_ones_tree());
  EXPECT_FALSE(rep.has_inverse());
  EXPECT_EQ(rep.map(BairePoint::from_prefix(seq({2, 1, 1}))).prefix(3), seq({1, 1, 0}));
  const SumSpace sum = catalog_sum("cantor-infinitely-many-zeros");
  EXPECT_FALSE(sum.check_inverse_continuity(Side::Ac, 20, 2, 4).ok());
  EXPECT_TRUE(sum.check_map_continuity(Side::Ac, 60, 4).ok());
}

TEST(SumSpace, MetricAxiomsOnTaggedIndices) {
  const SumSpace sum = catalog_sum("cantor-cylinder-union");
  const SpacePresentation p = sum.presentation();
  const auto violations = check_axioms(
      150, [&p](std::uint64_t i, std::uint64_t j) { return p.distance(i, j); },
      [&sum](std::uint64_t i, std::uint64_t j) {
        const TaggedIndex a = sum.resolve(i), b = sum.resolve(j);
        return a.side == b.side && sum.family(a.side).equal(a.code, b.code);
      });
  EXPECT_TRUE(violations.empty());
}

TEST(SumSpace, DegenerateSplitsKeepTheAmbientMetric) {
  const AmbientSpace ambient(cantor_tree());
  const Remetrization r = remetrize(ambient, std::nullopt, identity_representation(cantor_tree()));
  EXPECT_TRUE(r.degenerate());
  const SpacePresentation p = ambient.presentation();
  for (std::uint64_t i = 0; i < 30; ++i) {
    for (std::uint64_t j = 0; j < 30; ++j) EXPECT_EQ(r.presentation.distance(i, j), p.distance(i, j));
  }
  EXPECT_TRUE(remetrize(ambient, identity_representation(cantor_tree()), std::nullopt).degenerate());
  EXPECT_FALSE(remetrize(ambient, identity_representation(cylinder_union_tree({seq({0})}, 1)),
                         identity_representation(cylinder_union_tree({seq({1})}, 1)))
                   .degenerate());
}

}  // namespace
}  // namespace remetrize
