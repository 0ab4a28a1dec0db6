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
#include <functional>
#include <string>

#include "remetrize/rational.hpp"

namespace remetrize {

/// A presentation whose dense points carry exact norms d(x_i, 0).
struct NormedPresentation {
  std::string name;
  std::function<Rational(const Nat&)> norm;
  std::function<Rational(const Nat&, const Nat&)> distance;
};

/// The rationals on the line: x_s = q_s, d(x, y) = |x - y|.
NormedPresentation rational_line();

/// Distance to the complement of the open unit ball for a point inside it.
Rational distance_to_complement(const Rational& norm);

/// The metric making the open unit ball A = {x : |x| < 1} complete:
/// d(x,y) + |1/(1-|x|) - 1/(1-|y|)| inside A, the restriction of d outside.
/// Throws OnBoundary for a point of norm exactly 1 and CrossSide for a pair
/// on opposite sides of the sphere.
Rational open_ball_distance(const Rational& d, const Rational& norm_x, const Rational& norm_y);
Rational open_ball_distance(const NormedPresentation& space, const Nat& i, const Nat& j);

}  // namespace remetrize
