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

#include "remetrize/witness.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "remetrize/errors.hpp"

namespace remetrize {

bool Pi02Matrix::holds(const BairePoint& a, std::uint64_t n, std::uint64_t m) const {
  const Sequence prefix = a.prefix(use_bound(n, m));
  return relation(prefix, n, m);
}

struct WitnessClosure::State {
  Pi02Matrix matrix;
  std::mutex mutex;
  // Keyed by point identity; the stored copy of the argument keeps the id
  // from being reused while the entry lives.
  std::unordered_map<const void*, std::pair<BairePoint, BairePoint>> witnesses;
};

WitnessClosure::WitnessClosure(Pi02Matrix matrix) : state_(std::make_shared<State>()) {
  state_->matrix = std::move(matrix);
}

const Pi02Matrix& WitnessClosure::matrix() const { return state_->matrix; }

BairePoint WitnessClosure::witness_point(const BairePoint& a) const {
  {
    std::lock_guard lock(state_->mutex);
    auto it = state_->witnesses.find(a.id());
    if (it != state_->witnesses.end()) return it->second.second;
  }
  const Pi02Matrix matrix = state_->matrix;
  BairePoint beta = BairePoint::from_rule(
      [matrix, a](BairePoint::Position n) -> Nat {
        for (std::uint64_t m = 0; m <= matrix.per_n_budget; ++m) {
          if (matrix.holds(a, n, m)) return nat_from_u64(m);
        }
        throw WitnessSearchExhausted("no witness m <= " + std::to_string(matrix.per_n_budget) +
                                     " for n = " + std::to_string(n) + " under " +
                                     matrix.name);
      },
      "witness[" + matrix.name + "](" + a.description() + ")");
  std::lock_guard lock(state_->mutex);
  return state_->witnesses.try_emplace(a.id(), a, beta).first->second.second;
}

bool WitnessClosure::check_closure(const BairePoint& a, const BairePoint& b,
                                   std::uint64_t depth) const {
  const Pi02Matrix& matrix = state_->matrix;
  for (std::uint64_t n = 0; n < depth; ++n) {
    const std::uint64_t bn = to_u64(b(n));
    if (!matrix.holds(a, n, bn)) return false;
    for (std::uint64_t k = 0; k < bn; ++k) {
      if (matrix.holds(a, n, k)) return false;
    }
  }
  return true;
}

std::uint64_t WitnessClosure::continuity_modulus(const BairePoint& a, std::uint64_t n) const {
  const BairePoint beta = witness_point(a);
  std::uint64_t modulus = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint64_t bi = to_u64(beta(i));
    for (std::uint64_t m = 0; m <= bi; ++m) {
      modulus = std::max(modulus, state_->matrix.use_bound(i, m));
    }
  }
  return modulus;
}

BairePoint WitnessClosure::inverse(const BairePoint& a) const {
  return zip(a, witness_point(a));
}

namespace {

// Witness values fixed by a node of the zip tree.
class VisibleWitnesses {
 public:
  VisibleWitnesses(const Pi02Matrix& matrix, std::vector<std::uint64_t> values)
      : matrix_(matrix), values_(std::move(values)) {
    for (std::uint64_t n = 0; n < values_.size(); ++n) {
      for (std::uint64_t m = 0; m <= values_[n]; ++m) {
        horizon_ = std::max(horizon_, matrix_.use_bound(n, m));
      }
    }
  }

  // Prefix length after which every visible constraint is decided.
  std::uint64_t horizon() const { return horizon_; }

  // Some constraint is already decided false by p.
  bool refuted(std::span<const Nat> p) const {
    for (std::uint64_t n = 0; n < values_.size(); ++n) {
      const std::uint64_t c = values_[n];
      for (std::uint64_t m = 0; m <= c; ++m) {
        const std::uint64_t use = matrix_.use_bound(n, m);
        if (use > p.size()) continue;
        const bool value = matrix_.relation(p.first(use), n, m);
        if (value != (m == c)) return true;
      }
    }
    return false;
  }

 private:
  const Pi02Matrix& matrix_;
  std::vector<std::uint64_t> values_;
  std::uint64_t horizon_ = 0;
};

constexpr std::uint64_t kLookaheadSteps = 1U << 20;

bool extendable(const PrunedTree& ambient, const VisibleWitnesses& constraints, Sequence& alpha,
                std::uint64_t& steps) {
  if (++steps > kLookaheadSteps) {
    throw WitnessSearchExhausted("lookahead over " + ambient.description() + " exceeded " +
                                 std::to_string(kLookaheadSteps) + " steps at " +
                                 to_string(alpha));
  }
  if (constraints.refuted(alpha)) return false;
  if (alpha.size() >= constraints.horizon()) return true;
  const std::uint64_t bound = ambient.child_bound(alpha);
  for (std::uint64_t k = 0; k <= bound; ++k) {
    alpha.push_back(nat_from_u64(k));
    const bool ok = ambient.node(alpha) && extendable(ambient, constraints, alpha, steps);
    alpha.pop_back();
    if (ok) return true;
  }
  return false;
}

}  // namespace

PrunedTree WitnessClosure::tree(const PrunedTree& ambient, std::uint64_t witness_bound) const {
  const Pi02Matrix matrix = state_->matrix;
  const std::uint64_t budget = std::min(matrix.per_n_budget, witness_bound);
  auto node = [matrix, ambient, budget](std::span<const Nat> u) {
    Sequence alpha;
    std::vector<std::uint64_t> values;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (i % 2 == 0) {
        alpha.push_back(u[i]);
      } else {
        if (u[i] > budget) return false;
        values.push_back(to_u64(u[i]));
      }
    }
    if (!ambient.node(alpha)) return false;
    const VisibleWitnesses constraints(matrix, std::move(values));
    std::uint64_t steps = 0;
    return extendable(ambient, constraints, alpha, steps);
  };
  auto child_bound = [ambient, budget](std::span<const Nat> u) -> std::uint64_t {
    if (u.size() % 2 == 1) return budget;
    Sequence alpha;
    for (std::size_t i = 0; i < u.size(); i += 2) alpha.push_back(u[i]);
    return ambient.child_bound(alpha);
  };
  return PrunedTree(node, child_bound,
                    "witness-tree[" + matrix.name + "](" + ambient.description() + ")");
}

}  // namespace remetrize
