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
#include <memory>
#include <span>
#include <string>

#include "remetrize/baire.hpp"
#include "remetrize/tree.hpp"

namespace remetrize {

/// A Pi^0_2 set given in normal form: alpha in A iff for every n some m
/// satisfies R(alpha, n, m).
struct Pi02Matrix {
  std::string name;
  /// R(alpha, n, m), evaluated on alpha restricted to use_bound(n, m).
  std::function<bool(std::span<const Nat> prefix, std::uint64_t n, std::uint64_t m)> relation;
  /// Length of the prefix of alpha that R(., n, m) reads.
  std::function<std::uint64_t(std::uint64_t n, std::uint64_t m)> use_bound;
  /// Search ceiling for the least witness at each n.
  std::uint64_t per_n_budget = 256;

  bool holds(const BairePoint& a, std::uint64_t n, std::uint64_t m) const;
};

class WitnessClosure {
 public:
  explicit WitnessClosure(Pi02Matrix matrix);

  const Pi02Matrix& matrix() const;

  /// beta(n) = least m <= per_n_budget with R(a, n, m). The point is lazy
  /// and the search for coordinate n throws WitnessSearchExhausted when the
  /// budget runs out.
  BairePoint witness_point(const BairePoint& a) const;

  /// F(a, b) checked for n < depth. A false answer is conclusive.
  bool check_closure(const BairePoint& a, const BairePoint& b, std::uint64_t depth) const;

  /// L = max{use_bound(n, m) : n < N, m <= beta(n)}. Any a' that agrees with
  /// a below L has the same witnesses below N.
  std::uint64_t continuity_modulus(const BairePoint& a, std::uint64_t n) const;

  /// The branch zip(a, witness_point(a)) of the closed set F.
  BairePoint inverse(const BairePoint& a) const;

  /// The tree of F inside zip(ambient, N). A node decides consistency of its
  /// visible witnesses by a depth-first search over ambient continuations;
  /// witness coordinates are searched up to min(per_n_budget, witness_bound).
  PrunedTree tree(const PrunedTree& ambient, std::uint64_t witness_bound) const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

}  // namespace remetrize
