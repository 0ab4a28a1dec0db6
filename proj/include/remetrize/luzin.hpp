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
#include <string>

#include "remetrize/baire.hpp"
#include "remetrize/coding.hpp"
#include "remetrize/rational.hpp"
#include "remetrize/tree.hpp"

namespace remetrize {

/// A recursively zero-dimensional space: a dense family r_i, exact distances
/// between dense points, and decidable ball membership d(x, r_i) < q for
/// instance points x (themselves encoded as Baire points).
struct ZeroDimPresentation {
  std::string name;
  std::function<BairePoint(std::uint64_t)> dense;
  std::function<Rational(std::uint64_t, std::uint64_t)> dist;
  /// d(x, r_i) < q.
  std::function<bool(const BairePoint&, std::uint64_t, const Rational&)> ball_member;
  /// Ceiling W(s) for the dense-index search deciding A_s != {}.
  std::function<std::uint64_t(std::span<const Nat>)> witness_bound;
  /// Ceiling for the child-index search in embed().
  std::uint64_t scan_bound = 256;
  bool ultrametric = false;
};

/// d / (1 + d).
Rational rescale(const Rational& d);
/// The same space under the metric d / (1 + d), which is bounded by 1.
ZeroDimPresentation rescale(ZeroDimPresentation space);

/// Cantor space 2^N under p_N; r_i has the binary digits of i (least
/// significant first) followed by zeros.
ZeroDimPresentation cantor_presentation();
/// The closed set of branches of a validated tree under p_N, with the
/// leftmost-branch family as dense sequence.
ZeroDimPresentation closed_subset_presentation(DensePointFamily family);
/// {0, ..., n-1} with the discrete metric; r_i = i mod n, point k is the
/// constant sequence k.
ZeroDimPresentation discrete_presentation(std::uint64_t n);

/// Exact distances of the embedded dense points y_i = f(x_i).
class ImagePresentation {
 public:
  ImagePresentation(std::function<BairePoint(std::uint64_t)> point,
                    std::function<Rational(std::uint64_t, std::uint64_t)> distance)
      : point_(std::move(point)), distance_(std::move(distance)) {}

  BairePoint point(std::uint64_t i) const { return point_(i); }
  /// 1/(g(i,j)+1) for distinct points, where g is the length of the
  /// splitting cell; 0 otherwise.
  Rational distance(std::uint64_t i, std::uint64_t j) const { return distance_(i, j); }

 private:
  std::function<BairePoint(std::uint64_t)> point_;
  std::function<Rational(std::uint64_t, std::uint64_t)> distance_;
};

/// The clopen Luzin scheme (A_s) of a zero-dimensional space and the
/// embedding f into Baire space it induces.
///
/// B_0 = X and B_{s^k} = B_s ∩ N(k, 2^{lh(s)+2}) when r_k ∈ B_s (empty
/// otherwise), where N(k, n) is the ball around r_k of radius 1/(n+1).
/// A_0 = X and A_{s^k} = (B_{s^k} \ ∪_{i<k} B_{s^i}) ∩ A_s. Both are evaluated
/// by recursion on lh(s); results on dense points are memoized.
///
/// The distance is always rescaled to d/(1+d). Only ultrametric
/// presentations are accepted, which is what makes the balls clopen.
class LuzinScheme {
 public:
  LuzinScheme(ZeroDimPresentation space, std::uint64_t max_depth);

  const ZeroDimPresentation& space() const;
  std::uint64_t max_depth() const;

  /// b(x, s): x in B_s.
  bool in_b(const BairePoint& x, std::span<const Nat> s) const;
  bool dense_in_b(std::uint64_t i, std::span<const Nat> s) const;

  /// x in A_s.
  bool cell_member(const BairePoint& x, const SeqCode& s) const;
  bool cell_member(const BairePoint& x, std::span<const Nat> s) const;
  bool dense_cell_member(std::uint64_t i, std::span<const Nat> s) const;

  /// f(x): f(x)(n) is the unique k with x in A_{f(x)|n ^ k}.
  BairePoint embed(const BairePoint& x) const;
  /// f(r_i); the child search is extended to i, which always suffices.
  BairePoint embed_dense(std::uint64_t i) const;

  /// A_s != {}. Searches r_i in A_s for i <= W(s). In an ultrametric scheme a
  /// nonempty A_{s^k} contains r_k, so a failed search that covered the last
  /// entry of s is conclusive; otherwise ImageWitnessExhausted is thrown.
  bool image_node(std::span<const Nat> s) const;
  bool image_node(const SeqCode& s) const;
  /// The pruned tree of f[X].
  PrunedTree image_tree() const;

  /// Semi-decides d(f^{-1}(a), r_i) < q_{s_rat} by searching n <= depth and
  /// j <= W(a|n) for r_j in A_{a|n} with d(r_j, r_i) < q - 2^{-n}. False
  /// means "not verified", not a refutation.
  bool inverse_ball(const BairePoint& a, std::uint64_t i, const Nat& s_rat,
                    std::uint64_t depth) const;

  /// The dense family y_i = f(r_i) with distances from cell descent.
  /// `distinct(i, j)` must decide r_i != r_j.
  ImagePresentation image_presentation(std::function<bool(std::uint64_t, std::uint64_t)> distinct) const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

}  // namespace remetrize
