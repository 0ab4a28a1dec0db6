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

#include "remetrize/coding.hpp"
#include "remetrize/errors.hpp"

namespace remetrize {

NormedPresentation rational_line() {
  return NormedPresentation{
      "rational-line",
      [](const Nat& i) { return abs(rational_of_index(i)); },
      [](const Nat& i, const Nat& j) { return abs(rational_of_index(i) - rational_of_index(j)); },
  };
}

Rational distance_to_complement(const Rational& norm) {
  if (norm >= Rational(1)) {
    throw OnBoundary("point of norm " + norm.str() + " is not inside the open unit ball");
  }
  return Rational(1) - norm;
}

Rational open_ball_distance(const Rational& d, const Rational& norm_x, const Rational& norm_y) {
  const Rational one(1);
  if (norm_x == one || norm_y == one) {
    throw OnBoundary("norm exactly 1 makes the correction term singular");
  }
  const bool x_inside = norm_x < one;
  const bool y_inside = norm_y < one;
  if (x_inside && y_inside) {
    return d + abs(one / distance_to_complement(norm_x) - one / distance_to_complement(norm_y));
  }
  if (!x_inside && !y_inside) return d;
  // A constant cross distance is not a metric once the side-A metric is
  // unbounded, so mixed pairs are rejected instead of guessed.
  throw CrossSide("points of norms " + norm_x.str() + " and " + norm_y.str() +
                  " lie on opposite sides of the unit sphere");
}

Rational open_ball_distance(const NormedPresentation& space, const Nat& i, const Nat& j) {
  return open_ball_distance(space.distance(i, j), space.norm(i), space.norm(j));
}

}  // namespace remetrize
