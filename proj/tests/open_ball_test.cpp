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

#include "remetrize/open_ball.hpp"

#include <gtest/gtest.h>

#include "remetrize/coding.hpp"
#include "remetrize/errors.hpp"

namespace remetrize {
namespace {

Nat index(const Rational& q) { return index_of_rational(q); }

TEST(OpenBall, EqualPointsKeepTheBaseDistance) {
  const NormedPresentation line = rational_line();
  const Nat i = index(Rational(1, 3));
  EXPECT_EQ(open_ball_distance(line, i, i), Rational(0));
}

TEST(OpenBall, ZeroToHalf) {
  const NormedPresentation line = rational_line();
  // 1/2 + |1/(1-0) - 1/(1-1/2)| = 1/2 + 1.
  EXPECT_EQ(open_ball_distance(line, index(Rational(0)), index(Rational(1, 2))), Rational(3, 2));
  EXPECT_EQ(open_ball_distance(line, index(Rational(-1, 2)), index(Rational(1, 2))), Rational(1));
}

TEST(OpenBall, BoundaryAndCrossingInputsAreRejected) {
  const NormedPresentation line = rational_line();
  EXPECT_THROW(open_ball_distance(line, index(Rational(1)), index(Rational(0))), OnBoundary);
  EXPECT_THROW(open_ball_distance(line, index(Rational(0)), index(Rational(-1))), OnBoundary);
  EXPECT_THROW(open_ball_distance(line, index(Rational(0)), index(Rational(3, 2))), CrossSide);
  EXPECT_THROW(distance_to_complement(Rational(5, 4)), OnBoundary);
  // Two points outside the ball keep their base distance.
  EXPECT_EQ(open_ball_distance(line, index(Rational(2)), index(Rational(-3))), Rational(5));
}

TEST(OpenBall, SequencesDriftingToTheSphereBecomeUnbounded) {
  // x_n = 1 - 2^{-n} is Cauchy for |x - y| but the correction term grows
  // like 2^n, so tail pairs eventually exceed any bound.
  const NormedPresentation line = rational_line();
  const Rational bound(1000);
  bool exceeded = false;
  for (std::uint64_t n = 1; n < 16; ++n) {
    const Rational xn = Rational(1) - Rational::pow2_inverse(n);
    const Rational xm = Rational(1) - Rational::pow2_inverse(n + 1);
    const Rational d = open_ball_distance(line, index(xn), index(xm));
    EXPECT_EQ(d, Rational::pow2_inverse(n + 1) + Rational(Nat(Nat(1) << n), 1));
    if (d > bound) exceeded = true;
  }
  EXPECT_TRUE(exceeded);
}

}  // namespace
}  // namespace remetrize
