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
#include <string>
#include <vector>

#include "remetrize/baire.hpp"
#include "remetrize/coding.hpp"
#include "remetrize/rational.hpp"
#include "remetrize/tree.hpp"
#include "remetrize/witness.hpp"

namespace remetrize {

/// A recursively presented space: a dense sequence indexed by naturals and
/// an exact rational distance between dense points.
struct SpacePresentation {
  std::string name;
  std::function<BairePoint(const Nat&)> point;
  std::function<Rational(const Nat&, const Nat&)> distance;

  /// d(x_i, x_j) < m/(k+1).
  bool less(const Nat& i, const Nat& j, const Nat& m, const Nat& k) const;
  /// d(x_i, x_j) <= m/(k+1).
  bool less_equal(const Nat& i, const Nat& j, const Nat& m, const Nat& k) const;
};

/// A closed subspace of Baire space with the first-disagreement metric.
class AmbientSpace {
 public:
  explicit AmbientSpace(PrunedTree tree);

  const PrunedTree& tree() const { return family_.tree(); }
  const DensePointFamily& family() const { return family_; }
  SpacePresentation presentation() const;

  /// p_N(x, x_center) < radius; exact since p_N only takes values 1/(k+1).
  bool in_ball(const BairePoint& x, const SeqCode& center, const Rational& radius) const;

 private:
  DensePointFamily family_;
};

/// A closed set F of Baire space together with a continuous injection of F
/// into the ambient space. Moduli are prefix lengths: map_modulus(alpha, k)
/// is a length L such that branches agreeing with alpha below L have images
/// agreeing below k + 1, i.e. at distance < 1/(k+1).
struct ClosedRepresentation {
  std::string kind;
  PrunedTree tree;
  std::function<BairePoint(const BairePoint&)> map;
  std::function<std::uint64_t(const BairePoint& branch, std::uint64_t k)> map_modulus;
  /// Absent when the inverse is not continuous on the image.
  std::function<BairePoint(const BairePoint&)> inverse;
  std::function<std::uint64_t(const BairePoint& x, std::uint64_t k)> inverse_modulus;

  bool has_inverse() const { return static_cast<bool>(inverse); }
};

ClosedRepresentation identity_representation(const PrunedTree& tree);
/// Branches (N, alpha) mapped to alpha.
ClosedRepresentation shift_representation(const PrunedTree& tree);
/// The least-witness closed set of a Pi^0_2 set inside zip(ambient, N),
/// mapped to its even part.
ClosedRepresentation witness_representation(const WitnessClosure& closure,
                                            const PrunedTree& ambient,
                                            std::uint64_t witness_bound);

enum class Side { A = 0, Ac = 1 };

std::string side_name(Side side);

struct TaggedIndex {
  Side side;
  SeqCode code;

  friend bool operator==(const TaggedIndex&, const TaggedIndex&) = default;
};

struct ExtensionCheck {
  std::uint64_t k = 0;
  std::uint64_t sampled = 0;
  std::vector<SeqCode> outside;  // sampled points of the new ball lying outside V

  bool ok() const { return outside.empty(); }
};

struct ContinuityCheck {
  std::uint64_t pairs_checked = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// The direct sum of A and its complement, each carrying the metric pulled
/// back from its closed representation, with distance 2 across sides.
class SumSpace {
 public:
  SumSpace(AmbientSpace ambient, ClosedRepresentation part_a, ClosedRepresentation part_ac);

  const AmbientSpace& ambient() const;
  const ClosedRepresentation& representation(Side side) const;
  const DensePointFamily& family(Side side) const;

  /// p_N(alpha_s, alpha_t) for the dense branches of one side.
  Rational pullback_distance(Side side, const SeqCode& s, const SeqCode& t) const;
  Rational distance(const TaggedIndex& p, const TaggedIndex& q) const;

  /// The dense point x_p = pi_side(alpha_code).
  BairePoint point(const TaggedIndex& p) const;

  /// Index <i, s> with i in {0, 1} names side i; every other index names
  /// the first dense point of side A.
  TaggedIndex resolve(const Nat& index) const;
  static Nat index_of(const TaggedIndex& p);

  SpacePresentation presentation() const;

  /// The 0/1 point <eps_1, eps_2> built from both node predicates.
  BairePoint epsilon_code() const;

  /// Side A membership from one ball query: d(p, x_<0,s0>) < 3/2.
  bool member_of_a(const TaggedIndex& p) const;

  /// k such that the new ball of radius 1/(k+1) around p lies inside the
  /// ambient ball V = B(center, radius). Throws NotInterior when p is not
  /// strictly inside V.
  std::uint64_t extension_certificate(const TaggedIndex& p, const SeqCode& center,
                                      const Rational& radius) const;
  /// Computes the certificate and verifies it on every same-side dense code
  /// below sample_bound that lies in the certified new ball.
  ExtensionCheck check_extension(const TaggedIndex& p, const SeqCode& center,
                                 const Rational& radius, std::uint64_t sample_bound) const;

  /// Identity from the new metric to the ambient metric, checked through
  /// map_modulus for precisions k < precisions on dense codes below bound.
  ContinuityCheck check_map_continuity(Side side, std::uint64_t bound,
                                       std::uint64_t precisions) const;
  /// Identity from the ambient metric to the new metric on one side,
  /// checked through inverse_modulus; also checks inverse(map(alpha)) = alpha.
  ContinuityCheck check_inverse_continuity(Side side, std::uint64_t bound,
                                           std::uint64_t precisions, std::uint64_t depth) const;
  /// Distinct dense branches (by the equality relation) must map to points
  /// with a verified disagreement.
  ContinuityCheck check_injective(Side side, std::uint64_t bound, std::uint64_t budget) const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

/// Result of the re-metrization pipeline. When A is empty or everything the
/// ambient presentation is returned unchanged and `sum` is empty.
struct Remetrization {
  SpacePresentation presentation;
  std::optional<SumSpace> sum;

  bool degenerate() const { return !sum.has_value(); }
};

Remetrization remetrize(const AmbientSpace& ambient, std::optional<ClosedRepresentation> part_a,
                        std::optional<ClosedRepresentation> part_ac);

}  // namespace remetrize
