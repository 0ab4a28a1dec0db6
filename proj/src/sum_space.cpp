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

#include <array>

#include "remetrize/errors.hpp"

namespace remetrize {

bool SpacePresentation::less(const Nat& i, const Nat& j, const Nat& m, const Nat& k) const {
  return distance(i, j) < Rational(m, k + 1);
}

bool SpacePresentation::less_equal(const Nat& i, const Nat& j, const Nat& m,
                                   const Nat& k) const {
  return distance(i, j) <= Rational(m, k + 1);
}

AmbientSpace::AmbientSpace(PrunedTree tree) : family_(std::move(tree)) {}

SpacePresentation AmbientSpace::presentation() const {
  const DensePointFamily family = family_;
  return SpacePresentation{
      family.tree().description(),
      [family](const Nat& i) { return family.leftmost(SeqCode(i)); },
      [family](const Nat& i, const Nat& j) { return family.distance(SeqCode(i), SeqCode(j)); },
  };
}

bool AmbientSpace::in_ball(const BairePoint& x, const SeqCode& center,
                           const Rational& radius) const {
  if (radius.sign() <= 0) return false;
  return agree_on(x, family_.leftmost(center), agreement_length(radius));
}

ClosedRepresentation identity_representation(const PrunedTree& tree) {
  ClosedRepresentation rep{"identity", tree, {}, {}, {}, {}};
  rep.map = [](const BairePoint& x) { return x; };
  rep.map_modulus = [](const BairePoint&, std::uint64_t k) { return k + 1; };
  rep.inverse = [](const BairePoint& x) { return x; };
  rep.inverse_modulus = [](const BairePoint&, std::uint64_t k) { return k + 1; };
  return rep;
}

ClosedRepresentation shift_representation(const PrunedTree& tree) {
  ClosedRepresentation rep{"shift", tree, {}, {}, {}, {}};
  rep.map = [](const BairePoint& x) { return shift(x, 1); };
  rep.map_modulus = [](const BairePoint&, std::uint64_t k) { return k + 2; };
  return rep;
}

ClosedRepresentation witness_representation(const WitnessClosure& closure,
                                            const PrunedTree& ambient,
                                            std::uint64_t witness_bound) {
  ClosedRepresentation rep{"witness", closure.tree(ambient, witness_bound), {}, {}, {}, {}};
  rep.map = [](const BairePoint& x) { return even_part(x); };
  // Image positions 0..k are branch positions 0, 2, ..., 2k.
  rep.map_modulus = [](const BairePoint&, std::uint64_t k) { return 2 * k + 1; };
  rep.inverse = [closure](const BairePoint& x) { return closure.inverse(x); };
  // zip positions 0..k need x below ceil((k+1)/2) and the witnesses below
  // floor((k+1)/2).
  rep.inverse_modulus = [closure](const BairePoint& x, std::uint64_t k) {
    const std::uint64_t alpha_len = (k + 2) / 2;
    const std::uint64_t beta_len = (k + 1) / 2;
    return std::max(alpha_len, closure.continuity_modulus(x, beta_len));
  };
  return rep;
}

std::string side_name(Side side) { return side == Side::A ? "A" : "Ac"; }

struct SumSpace::State {
  AmbientSpace ambient;
  std::array<ClosedRepresentation, 2> parts;
  std::array<DensePointFamily, 2> families;
};

SumSpace::SumSpace(AmbientSpace ambient, ClosedRepresentation part_a,
                   ClosedRepresentation part_ac) {
  DensePointFamily fam_a(part_a.tree);
  DensePointFamily fam_ac(part_ac.tree);
  state_ = std::make_shared<State>(State{std::move(ambient),
                                         {std::move(part_a), std::move(part_ac)},
                                         {std::move(fam_a), std::move(fam_ac)}});
}

const AmbientSpace& SumSpace::ambient() const { return state_->ambient; }

const ClosedRepresentation& SumSpace::representation(Side side) const {
  return state_->parts[static_cast<int>(side)];
}

const DensePointFamily& SumSpace::family(Side side) const {
  return state_->families[static_cast<int>(side)];
}

Rational SumSpace::pullback_distance(Side side, const SeqCode& s, const SeqCode& t) const {
  return family(side).distance(s, t);
}

Rational SumSpace::distance(const TaggedIndex& p, const TaggedIndex& q) const {
  if (p.side != q.side) return Rational(2);
  return pullback_distance(p.side, p.code, q.code);
}

BairePoint SumSpace::point(const TaggedIndex& p) const {
  return representation(p.side).map(family(p.side).leftmost(p.code));
}

TaggedIndex SumSpace::resolve(const Nat& index) const {
  const SeqCode code(index);
  if (lh(code) == 2) {
    const Nat side = proj(code, 0);
    if (side == 0) return {Side::A, SeqCode(proj(code, 1))};
    if (side == 1) return {Side::Ac, SeqCode(proj(code, 1))};
  }
  return {Side::A, family(Side::A).base_index()};
}

Nat SumSpace::index_of(const TaggedIndex& p) {
  return pair_position(Nat(static_cast<int>(p.side)), p.code.value());
}

SpacePresentation SumSpace::presentation() const {
  const SumSpace self = *this;
  return SpacePresentation{
      "sum(" + representation(Side::A).tree.description() + " | " +
          representation(Side::Ac).tree.description() + ")",
      [self](const Nat& i) { return self.point(self.resolve(i)); },
      [self](const Nat& i, const Nat& j) {
        return self.distance(self.resolve(i), self.resolve(j));
      },
  };
}

BairePoint SumSpace::epsilon_code() const {
  auto indicator = [](const PrunedTree& tree, const std::string& label) {
    return BairePoint::from_rule(
        [tree](BairePoint::Position n) -> Nat { return tree.node(SeqCode(n)) ? 1 : 0; },
        "eps(" + label + ")");
  };
  return pair_points(indicator(representation(Side::A).tree, "A"),
                     indicator(representation(Side::Ac).tree, "Ac"));
}

bool SumSpace::member_of_a(const TaggedIndex& p) const {
  const TaggedIndex anchor{Side::A, family(Side::A).base_index()};
  return distance(p, anchor) < Rational(3, 2);
}

std::uint64_t SumSpace::extension_certificate(const TaggedIndex& p, const SeqCode& center,
                                              const Rational& radius) const {
  const BairePoint x = point(p);
  if (!state_->ambient.in_ball(x, center, radius)) {
    throw NotInterior("dense point " + side_name(p.side) + ":" + p.code.str() +
                      " is not inside the ambient ball around " + center.str() +
                      " of radius " + radius.str());
  }
  const std::uint64_t agree = agreement_length(radius);
  if (agree == 0) return 0;
  const BairePoint branch = family(p.side).leftmost(p.code);
  const std::uint64_t needed = representation(p.side).map_modulus(branch, agree - 1);
  // The new ball of radius 1/(k+1) is the set of same-side branches agreeing
  // with this one on k+1 positions.
  return needed == 0 ? 0 : needed - 1;
}

ExtensionCheck SumSpace::check_extension(const TaggedIndex& p, const SeqCode& center,
                                         const Rational& radius,
                                         std::uint64_t sample_bound) const {
  ExtensionCheck check;
  check.k = extension_certificate(p, center, radius);
  const Rational new_radius(1, nat_from_u64(check.k) + 1);
  for (std::uint64_t t = 0; t < sample_bound; ++t) {
    const TaggedIndex q{p.side, SeqCode(t)};
    if (!(distance(p, q) < new_radius)) continue;
    ++check.sampled;
    if (!state_->ambient.in_ball(point(q), center, radius)) check.outside.push_back(q.code);
  }
  return check;
}

namespace {

std::vector<SeqCode> admissible_codes(const DensePointFamily& family, std::uint64_t bound) {
  std::vector<SeqCode> codes;
  for (std::uint64_t s = 0; s < bound; ++s) {
    if (family.admissible(SeqCode(s))) codes.emplace_back(s);
  }
  return codes;
}

bool branches_agree(const DensePointFamily& family, const SeqCode& s, const SeqCode& t,
                    std::uint64_t length) {
  const auto k = family.first_disagreement(s, t);
  return !k || *k >= length;
}

std::string pair_label(Side side, const SeqCode& s, const SeqCode& t) {
  return side_name(side) + ":" + s.str() + "," + t.str();
}

}  // namespace

ContinuityCheck SumSpace::check_map_continuity(Side side, std::uint64_t bound,
                                               std::uint64_t precisions) const {
  ContinuityCheck check;
  const DensePointFamily& fam = family(side);
  const ClosedRepresentation& rep = representation(side);
  const std::vector<SeqCode> codes = admissible_codes(fam, bound);
  for (const SeqCode& s : codes) {
    const BairePoint branch = fam.leftmost(s);
    const BairePoint image = rep.map(branch);
    for (std::uint64_t k = 0; k < precisions; ++k) {
      const std::uint64_t modulus = rep.map_modulus(branch, k);
      for (const SeqCode& t : codes) {
        if (!branches_agree(fam, s, t, modulus)) continue;
        ++check.pairs_checked;
        if (!agree_on(image, point({side, t}), k + 1)) {
          check.failures.push_back("map modulus " + std::to_string(k) + " fails at " +
                                   pair_label(side, s, t));
        }
      }
    }
  }
  return check;
}

ContinuityCheck SumSpace::check_inverse_continuity(Side side, std::uint64_t bound,
                                                   std::uint64_t precisions,
                                                   std::uint64_t depth) const {
  ContinuityCheck check;
  const ClosedRepresentation& rep = representation(side);
  if (!rep.has_inverse()) {
    check.failures.push_back("side " + side_name(side) + " declares no inverse");
    return check;
  }
  const DensePointFamily& fam = family(side);
  const std::vector<SeqCode> codes = admissible_codes(fam, bound);
  for (const SeqCode& s : codes) {
    const BairePoint branch = fam.leftmost(s);
    const BairePoint x = rep.map(branch);
    if (!agree_on(rep.inverse(x), branch, depth)) {
      check.failures.push_back("inverse(map(alpha)) differs from alpha at " + side_name(side) +
                               ":" + s.str());
      continue;
    }
    for (std::uint64_t k = 0; k < precisions; ++k) {
      const std::uint64_t modulus = rep.inverse_modulus(x, k);
      for (const SeqCode& t : codes) {
        if (!agree_on(x, point({side, t}), modulus)) continue;
        ++check.pairs_checked;
        if (!branches_agree(fam, s, t, k + 1)) {
          check.failures.push_back("inverse modulus " + std::to_string(k) + " fails at " +
                                   pair_label(side, s, t));
        }
      }
    }
  }
  return check;
}

ContinuityCheck SumSpace::check_injective(Side side, std::uint64_t bound,
                                          std::uint64_t budget) const {
  ContinuityCheck check;
  const DensePointFamily& fam = family(side);
  const std::vector<SeqCode> codes = admissible_codes(fam, bound);
  for (std::size_t i = 0; i < codes.size(); ++i) {
    for (std::size_t j = i + 1; j < codes.size(); ++j) {
      if (fam.equal(codes[i], codes[j])) continue;
      ++check.pairs_checked;
      if (!first_disagreement(point({side, codes[i]}), point({side, codes[j]}), budget)) {
        check.failures.push_back("distinct branches share an image prefix of length " +
                                 std::to_string(budget) + " at " +
                                 pair_label(side, codes[i], codes[j]));
      }
    }
  }
  return check;
}

Remetrization remetrize(const AmbientSpace& ambient, std::optional<ClosedRepresentation> part_a,
                        std::optional<ClosedRepresentation> part_ac) {
  if (!part_a || !part_ac) return Remetrization{ambient.presentation(), std::nullopt};
  SumSpace sum(ambient, std::move(*part_a), std::move(*part_ac));
  SpacePresentation presentation = sum.presentation();
  return Remetrization{std::move(presentation), std::move(sum)};
}

}  // namespace remetrize
