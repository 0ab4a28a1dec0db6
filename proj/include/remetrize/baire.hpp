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
#include <optional>
#include <span>
#include <string>

#include "remetrize/coding.hpp"
#include "remetrize/rational.hpp"

namespace remetrize {

namespace detail {
class PointState;
}

/// A point of Baire space: a total rule n -> alpha(n) behind a write-once
/// memo. Copies share the memo. Queries are safe from several threads;
/// rules are deterministic so a racing duplicate write stores the same value.
class BairePoint {
 public:
  using Position = std::uint64_t;
  /// alpha(n) computed directly from the position.
  using Rule = std::function<Nat(Position)>;
  /// alpha(n) computed from alpha(0), ..., alpha(n - 1), which is passed as
  /// the prefix; values are produced strictly in order.
  using StepRule = std::function<Nat(std::span<const Nat> prefix)>;

  BairePoint();  // the constant-zero point

  static BairePoint from_rule(Rule rule, std::string description = {});
  static BairePoint from_steps(StepRule rule, std::string description = {});
  static BairePoint constant(const Nat& value);
  /// preperiod followed by period repeated forever; an empty period means
  /// zeros after the preperiod.
  static BairePoint eventually_periodic(Sequence preperiod, Sequence period);
  static BairePoint from_prefix(Sequence prefix);  // prefix then zeros

  Nat operator()(Position n) const;
  Sequence prefix(Position length) const;
  SeqCode prefix_code(Position length) const;

  /// Human-readable rule ("ep([1],[0,1])", "leftmost(...)", ...).
  const std::string& description() const;
  /// Points built by eventually_periodic keep their data for serialization.
  const Sequence* preperiod() const;
  const Sequence* period() const;

  /// Identity of the shared memo; equal ids imply extensional equality.
  const void* id() const { return state_.get(); }

 private:
  explicit BairePoint(std::shared_ptr<detail::PointState> state) : state_(std::move(state)) {}

  std::shared_ptr<detail::PointState> state_;
};

inline Nat query(const BairePoint& p, BairePoint::Position n) { return p(n); }

/// Result of comparing two points up to a depth budget. Equality is never
/// decided: agreement on the whole budget yields BelowThreshold(1/(budget+1)).
struct DistanceResult {
  enum class Kind { Exact, BelowThreshold };
  Kind kind;
  Rational value;

  bool exact() const { return kind == Kind::Exact; }
  friend bool operator==(const DistanceResult&, const DistanceResult&) = default;
};

/// p_N(a, b) = 1/(k + 1) for the least k with a(k) != b(k), searched on
/// positions [0, budget).
DistanceResult distance(const BairePoint& a, const BairePoint& b, std::uint64_t budget);

/// Least disagreement index below `budget`, if any.
std::optional<std::uint64_t> first_disagreement(const BairePoint& a, const BairePoint& b,
                                                std::uint64_t budget);

/// a agrees with a on [0, n).
bool agree_on(const BairePoint& a, const BairePoint& b, std::uint64_t n);

/// a in N_s, i.e. a(i) = (s)_i for every i < lh(s).
bool in_basic_nbhd(const BairePoint& a, const SeqCode& s);
bool in_basic_nbhd(const BairePoint& a, std::span<const Nat> u);

/// For a positive rational radius r, the number of leading positions two
/// points must share to lie at p_N-distance < r: the least K with
/// 1/(K + 1) < r. Radii above 1 give 0.
std::uint64_t agreement_length(const Rational& radius);

/// gamma with (gamma)_0 = a, (gamma)_1 = b and gamma(t) = 0 at every t that
/// is not a position <i, n> with i in {0, 1}.
BairePoint pair_points(const BairePoint& a, const BairePoint& b);
/// (g)_i(n) = g(<i, n>).
BairePoint slice(const BairePoint& g, const Nat& i);

/// zip(a, b) = a(0), b(0), a(1), b(1), ...; a homeomorphism N x N -> N.
BairePoint zip(const BairePoint& a, const BairePoint& b);
BairePoint even_part(const BairePoint& g);
BairePoint odd_part(const BairePoint& g);
/// n -> g(n + k).
BairePoint shift(const BairePoint& g, std::uint64_t k);

}  // namespace remetrize
