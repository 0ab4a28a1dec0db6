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

#include <map>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "remetrize/errors.hpp"

namespace remetrize {

Rational rescale(const Rational& d) { return d / (Rational(1) + d); }

ZeroDimPresentation rescale(ZeroDimPresentation space) {
  auto dist = space.dist;
  auto member = space.ball_member;
  space.dist = [dist](std::uint64_t i, std::uint64_t j) { return rescale(dist(i, j)); };
  // d/(1+d) < q  <=>  d < q/(1-q) for 0 < q < 1; always true for q >= 1.
  space.ball_member = [member](const BairePoint& x, std::uint64_t i, const Rational& q) {
    if (q.sign() <= 0) return false;
    if (q >= Rational(1)) return true;
    return member(x, i, q / (Rational(1) - q));
  };
  space.name = "rescaled(" + space.name + ")";
  return space;
}

namespace {

std::uint64_t last_entry(std::span<const Nat> s) {
  return s.empty() ? 0 : to_u64(s.back());
}

bool agrees_with(const BairePoint& x, const BairePoint& center, const Rational& q) {
  if (q.sign() <= 0) return false;
  return agree_on(x, center, agreement_length(q));
}

}  // namespace

ZeroDimPresentation cantor_presentation() {
  ZeroDimPresentation p;
  p.name = "cantor";
  p.dense = [](std::uint64_t i) {
    return BairePoint::from_rule(
        [i](BairePoint::Position n) -> Nat { return n < 64 ? Nat((i >> n) & 1U) : Nat(0); },
        "cantor.r(" + std::to_string(i) + ")");
  };
  p.dist = [](std::uint64_t i, std::uint64_t j) {
    if (i == j) return Rational(0);
    const std::uint64_t diff = i ^ j;
    return Rational(1, nat_from_u64(static_cast<std::uint64_t>(__builtin_ctzll(diff)) + 1));
  };
  auto dense = p.dense;
  p.ball_member = [dense](const BairePoint& x, std::uint64_t i, const Rational& q) {
    return agrees_with(x, dense(i), q);
  };
  p.witness_bound = last_entry;
  p.ultrametric = true;
  return p;
}

ZeroDimPresentation closed_subset_presentation(DensePointFamily family) {
  ZeroDimPresentation p;
  p.name = "baire-closed(" + family.tree().description() + ")";
  p.dense = [family](std::uint64_t i) { return family.leftmost(SeqCode(i)); };
  p.dist = [family](std::uint64_t i, std::uint64_t j) {
    return family.distance(SeqCode(i), SeqCode(j));
  };
  p.ball_member = [family](const BairePoint& x, std::uint64_t i, const Rational& q) {
    return agrees_with(x, family.leftmost(SeqCode(i)), q);
  };
  p.witness_bound = last_entry;
  p.ultrametric = true;
  return p;
}

ZeroDimPresentation discrete_presentation(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("discrete space needs at least one point");
  ZeroDimPresentation p;
  p.name = "discrete(" + std::to_string(n) + ")";
  p.dense = [n](std::uint64_t i) { return BairePoint::constant(nat_from_u64(i % n)); };
  p.dist = [n](std::uint64_t i, std::uint64_t j) {
    return i % n == j % n ? Rational(0) : Rational(1);
  };
  p.ball_member = [n](const BairePoint& x, std::uint64_t i, const Rational& q) {
    const Rational d = x(0) == nat_from_u64(i % n) ? Rational(0) : Rational(1);
    return d < q;
  };
  p.witness_bound = last_entry;
  p.ultrametric = true;
  return p;
}

namespace {

struct DenseKey {
  std::uint64_t index;
  SeqCode cell;
  friend bool operator==(const DenseKey&, const DenseKey&) = default;
};

struct DenseKeyHash {
  std::size_t operator()(const DenseKey& k) const {
    return SeqCodeHash{}(k.cell) * 31 + std::hash<std::uint64_t>{}(k.index);
  }
};

}  // namespace

struct LuzinScheme::State {
  ZeroDimPresentation space;
  std::uint64_t max_depth = 0;
  std::vector<Rational> radii;  // radius of N(k, 2^{l+2}) at level l

  std::mutex mutex;
  std::unordered_map<DenseKey, bool, DenseKeyHash> b_memo;
  std::unordered_map<DenseKey, bool, DenseKeyHash> a_memo;
  std::unordered_map<std::uint64_t, BairePoint> dense_points;
  std::unordered_map<std::uint64_t, BairePoint> embeddings;

  const Rational& radius(std::size_t level) {
    std::lock_guard lock(mutex);
    while (radii.size() <= level) {
      Nat n = 1;
      n <<= static_cast<unsigned long>(radii.size() + 2);
      radii.push_back(Rational(1, n + 1));
    }
    return radii[level];
  }

  BairePoint dense(std::uint64_t i) {
    {
      std::lock_guard lock(mutex);
      auto it = dense_points.find(i);
      if (it != dense_points.end()) return it->second;
    }
    BairePoint p = space.dense(i);
    std::lock_guard lock(mutex);
    return dense_points.emplace(i, p).first->second;
  }

  std::optional<bool> lookup(std::unordered_map<DenseKey, bool, DenseKeyHash>& memo,
                             const DenseKey& key) {
    std::lock_guard lock(mutex);
    auto it = memo.find(key);
    if (it == memo.end()) return std::nullopt;
    return it->second;
  }

  void store(std::unordered_map<DenseKey, bool, DenseKeyHash>& memo, DenseKey key, bool value) {
    std::lock_guard lock(mutex);
    memo.insert_or_assign(std::move(key), value);
  }
};

LuzinScheme::LuzinScheme(ZeroDimPresentation space, std::uint64_t max_depth)
    : state_(std::make_shared<State>()) {
  if (!space.ultrametric) {
    throw NotUltrametric("Luzin scheme needs clopen balls; " + space.name +
                         " is not flagged ultrametric");
  }
  state_->space = rescale(std::move(space));
  state_->max_depth = max_depth;
}

const ZeroDimPresentation& LuzinScheme::space() const { return state_->space; }

std::uint64_t LuzinScheme::max_depth() const { return state_->max_depth; }

bool LuzinScheme::in_b(const BairePoint& x, std::span<const Nat> s) const {
  // b(x, s^k) = b(x, s) & x in N(k, 2^{lh(s)+2}) & b(r_k, s)
  for (std::size_t l = 0; l < s.size(); ++l) {
    const std::uint64_t k = to_u64(s[l]);
    if (!state_->space.ball_member(x, k, state_->radius(l))) return false;
    if (!dense_in_b(k, s.first(l))) return false;
  }
  return true;
}

bool LuzinScheme::dense_in_b(std::uint64_t i, std::span<const Nat> s) const {
  if (s.empty()) return true;
  DenseKey key{i, encode(s)};
  if (auto hit = state_->lookup(state_->b_memo, key)) return *hit;
  const bool value = in_b(state_->dense(i), s);
  state_->store(state_->b_memo, std::move(key), value);
  return value;
}

bool LuzinScheme::cell_member(const BairePoint& x, std::span<const Nat> s) const {
  // A_{s^k} = (B_{s^k} \ U_{i<k} B_{s^i}) ∩ A_s; B_{s^k} ⊆ B_s by definition.
  for (std::size_t l = 0; l < s.size(); ++l) {
    std::span<const Nat> parent = s.first(l);
    const std::uint64_t k = to_u64(s[l]);
    const Rational& r = state_->radius(l);
    if (!(state_->space.ball_member(x, k, r) && dense_in_b(k, parent))) return false;
    for (std::uint64_t i = 0; i < k; ++i) {
      if (state_->space.ball_member(x, i, r) && dense_in_b(i, parent)) return false;
    }
  }
  return true;
}

bool LuzinScheme::cell_member(const BairePoint& x, const SeqCode& s) const {
  return cell_member(x, decode(s));
}

bool LuzinScheme::dense_cell_member(std::uint64_t i, std::span<const Nat> s) const {
  if (s.empty()) return true;
  DenseKey key{i, encode(s)};
  if (auto hit = state_->lookup(state_->a_memo, key)) return *hit;
  const bool value = cell_member(state_->dense(i), s);
  state_->store(state_->a_memo, std::move(key), value);
  return value;
}

namespace {

BairePoint make_embedding(const LuzinScheme& scheme, const BairePoint& x,
                          std::uint64_t extra_bound, std::string description) {
  return BairePoint::from_steps(
      [scheme, x, extra_bound](std::span<const Nat> prefix) -> Nat {
        // x ∈ A_prefix, so x ∈ A_{prefix^k} iff k is least with x ∈ B_{prefix^k}.
        const auto& space = scheme.space();
        const std::uint64_t bound =
            std::max({space.scan_bound, space.witness_bound(prefix), extra_bound});
        const Rational r = Rational(1, (Nat(1) << static_cast<unsigned long>(prefix.size() + 2)) + 1);
        for (std::uint64_t k = 0; k <= bound; ++k) {
          if (space.ball_member(x, k, r) && scheme.dense_in_b(k, prefix)) {
            return nat_from_u64(k);
          }
        }
        throw CellSearchExhausted("no child cell of " + to_string(prefix) + " at depth " +
                                  std::to_string(prefix.size()) + " contains the point within " +
                                  std::to_string(bound));
      },
      std::move(description));
}

}  // namespace

BairePoint LuzinScheme::embed(const BairePoint& x) const {
  return make_embedding(*this, x, 0, "f(" + x.description() + ")");
}

BairePoint LuzinScheme::embed_dense(std::uint64_t i) const {
  {
    std::lock_guard lock(state_->mutex);
    auto it = state_->embeddings.find(i);
    if (it != state_->embeddings.end()) return it->second;
  }
  BairePoint f = make_embedding(*this, state_->dense(i), i, "f(r_" + std::to_string(i) + ")");
  std::lock_guard lock(state_->mutex);
  return state_->embeddings.emplace(i, f).first->second;
}

bool LuzinScheme::image_node(std::span<const Nat> s) const {
  if (s.empty()) return true;
  const std::uint64_t bound = state_->space.witness_bound(s);
  for (std::uint64_t i = 0; i <= bound; ++i) {
    if (dense_cell_member(i, s)) return true;
  }
  if (bound >= last_entry(s)) return false;
  throw ImageWitnessExhausted("no dense witness for cell " + to_string(s) + " within " +
                              std::to_string(bound));
}

bool LuzinScheme::image_node(const SeqCode& s) const { return image_node(decode(s)); }

PrunedTree LuzinScheme::image_tree() const {
  LuzinScheme self = *this;
  return PrunedTree([self](std::span<const Nat> s) { return self.image_node(s); },
                    // f(r_j)(n) <= j, and r_last(s) ∈ A_s whenever A_s != {}.
                    [](std::span<const Nat> s) { return last_entry(s); },
                    "image(" + state_->space.name + ")");
}

bool LuzinScheme::inverse_ball(const BairePoint& a, std::uint64_t i, const Nat& s_rat,
                               std::uint64_t depth) const {
  const Rational q = rational_of_index(s_rat);
  if (q.sign() <= 0) return false;
  for (std::uint64_t n = 0; n <= depth; ++n) {
    const Sequence cell = a.prefix(n);
    const Rational target = q - Rational::pow2_inverse(n);
    if (target.sign() <= 0) continue;
    const std::uint64_t bound = state_->space.witness_bound(cell);
    for (std::uint64_t j = 0; j <= bound; ++j) {
      if (dense_cell_member(j, cell) && state_->space.dist(j, i) < target) return true;
    }
  }
  return false;
}

ImagePresentation LuzinScheme::image_presentation(
    std::function<bool(std::uint64_t, std::uint64_t)> distinct) const {
  LuzinScheme self = *this;
  return ImagePresentation(
      [self](std::uint64_t i) { return self.embed_dense(i); },
      [self, distinct](std::uint64_t i, std::uint64_t j) {
        if (!distinct(i, j)) return Rational(0);
        const BairePoint fi = self.embed_dense(i);
        const BairePoint fj = self.embed_dense(j);
        // The splitting cell u has fi, fj ∈ A_u but in different children;
        // its length is the first disagreement of the embeddings.
        for (std::uint64_t n = 0; n <= self.max_depth(); ++n) {
          if (fi(n) != fj(n)) return Rational(1, nat_from_u64(n + 1));
        }
        throw SplitSearchExhausted("dense points " + std::to_string(i) + " and " +
                                   std::to_string(j) + " share every cell up to depth " +
                                   std::to_string(self.max_depth()));
      });
}

}  // namespace remetrize
