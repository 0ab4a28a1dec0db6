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

#include "remetrize/catalog.hpp"

#include <algorithm>

#include "remetrize/errors.hpp"

namespace remetrize {

namespace {

bool entries_at_most(std::span<const Nat> u, std::uint64_t bound) {
  return std::all_of(u.begin(), u.end(), [bound](const Nat& x) { return x <= bound; });
}

bool compatible(std::span<const Nat> u, const Sequence& c) {
  const std::size_t n = std::min(u.size(), c.size());
  return std::equal(u.begin(), u.begin() + n, c.begin());
}

}  // namespace

PrunedTree full_tree() {
  return PrunedTree([](std::span<const Nat>) { return true; },
                    [](std::span<const Nat>) -> std::uint64_t { return 0; }, "full");
}

PrunedTree cantor_tree() { return bounded_tree(1); }

PrunedTree bounded_tree(std::uint64_t max_entry) {
  return PrunedTree([max_entry](std::span<const Nat> u) { return entries_at_most(u, max_entry); },
                    [max_entry](std::span<const Nat>) { return max_entry; },
                    max_entry == 1 ? "cantor" : "bounded-" + std::to_string(max_entry));
}

PrunedTree constant_entry_tree(std::uint64_t value) {
  const Nat v = nat_from_u64(value);
  return PrunedTree(
      [v](std::span<const Nat> u) {
        return std::all_of(u.begin(), u.end(), [&v](const Nat& x) { return x == v; });
      },
      [value](std::span<const Nat>) { return value; },
      "constant-entry-" + std::to_string(value));
}

PrunedTree discrete_tree(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("discrete space needs at least one point");
  return PrunedTree(
      [n](std::span<const Nat> u) {
        if (u.empty()) return true;
        return u[0] < nat_from_u64(n) &&
               std::all_of(u.begin(), u.end(), [&u](const Nat& x) { return x == u[0]; });
      },
      [n](std::span<const Nat> u) -> std::uint64_t { return u.empty() ? n - 1 : to_u64(u[0]); },
      "discrete-" + std::to_string(n));
}

PrunedTree cylinder_union_tree(std::vector<Sequence> cylinders,
                               std::optional<std::uint64_t> entry_max) {
  std::string description = "cylinders(";
  for (std::size_t i = 0; i < cylinders.size(); ++i) {
    description += (i ? "," : "") + to_string(cylinders[i]);
  }
  description += ")";
  if (entry_max) description += "<=" + std::to_string(*entry_max);
  auto node = [cylinders, entry_max](std::span<const Nat> u) {
    if (entry_max && !entries_at_most(u, *entry_max)) return false;
    return std::any_of(cylinders.begin(), cylinders.end(),
                       [u](const Sequence& c) { return compatible(u, c); });
  };
  auto child_bound = [cylinders, entry_max](std::span<const Nat> u) -> std::uint64_t {
    std::uint64_t bound = entry_max.value_or(0);
    for (const Sequence& c : cylinders) {
      if (c.size() > u.size() && compatible(u, c)) bound = std::max(bound, to_u64(c[u.size()]));
    }
    return bound;
  };
  return PrunedTree(node, child_bound, description);
}

PrunedTree dsl_tree(const DslExpr& predicate, std::uint64_t child_bound) {
  return PrunedTree([predicate](std::span<const Nat> u) { return predicate.test({u, 0, 0}); },
                    [child_bound](std::span<const Nat>) { return child_bound; },
                    "dsl(" + predicate.source() + ")");
}

PrunedTree no_repeat_tree() {
  return dsl_tree(
      DslExpr::parse("forall i < len: a(i) <= 2 && (i == 0 || a(i) != a(i-1) || a(i) == 0)"), 2);
}

PrunedTree explicit_tree(std::vector<Sequence> nodes, std::uint64_t depth,
                         PrunedTree continuation) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  const std::string description =
      "explicit(" + std::to_string(nodes.size()) + " nodes, depth " + std::to_string(depth) +
      ", then " + continuation.description() + ")";
  auto node = [nodes, depth, continuation](std::span<const Nat> u) {
    const std::size_t head = std::min<std::size_t>(u.size(), depth);
    const Sequence prefix(u.begin(), u.begin() + head);
    if (!std::binary_search(nodes.begin(), nodes.end(), prefix)) return false;
    return u.size() <= depth || continuation.node(u.subspan(depth));
  };
  auto child_bound = [nodes, depth, continuation](std::span<const Nat> u) -> std::uint64_t {
    if (u.size() >= depth) return continuation.child_bound(u.subspan(depth));
    std::uint64_t bound = 0;
    for (const Sequence& v : nodes) {
      if (v.size() > u.size() && compatible(u, v)) bound = std::max(bound, to_u64(v[u.size()]));
    }
    return bound;
  };
  return PrunedTree(node, child_bound, description);
}

PrunedTree eventually_ones_tree() {
  auto node = [](std::span<const Nat> u) {
    if (u.empty()) return true;
    if (!fits_u64(u[0])) return false;
    const std::uint64_t start = to_u64(u[0]);
    const std::span<const Nat> alpha = u.subspan(1);
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      if (alpha[i] > 1) return false;
      if (i >= start && alpha[i] != 1) return false;
      if (start > 0 && i + 1 == start && alpha[i] != 0) return false;
    }
    return true;
  };
  // Any start is admissible at the root; 3 keeps validation exploring a few.
  auto child_bound = [](std::span<const Nat> u) -> std::uint64_t { return u.empty() ? 3 : 1; };
  return PrunedTree(node, child_bound, "eventually-ones");
}

PrunedTree tree_by_name(std::string_view name) {
  if (name == "full") return full_tree();
  if (name == "cantor") return cantor_tree();
  if (name == "bounded-2") return bounded_tree(2);
  if (name == "constant-entry-3") return constant_entry_tree(3);
  if (name == "no-repeat") return no_repeat_tree();
  if (name == "cylinder-union") return cylinder_union_tree({{0, 0}, {1, 1}}, 1);
  if (name == "eventually-ones") return eventually_ones_tree();
  throw UnknownCatalogName("unknown tree '" + std::string(name) + "'");
}

std::vector<std::string> tree_names() {
  return {"full", "cantor", "bounded-2", "constant-entry-3", "no-repeat", "cylinder-union",
          "eventually-ones"};
}

namespace {

Pi02Matrix make_matrix(std::string name, std::uint64_t budget,
                       std::function<bool(std::span<const Nat>, std::uint64_t, std::uint64_t)> r,
                       std::function<std::uint64_t(std::uint64_t, std::uint64_t)> use) {
  return Pi02Matrix{std::move(name), std::move(r), std::move(use), budget};
}

}  // namespace

Pi02Matrix copy_matrix(std::uint64_t budget) {
  return make_matrix(
      "copy", budget,
      [](std::span<const Nat> a, std::uint64_t n, std::uint64_t m) { return a[n] == m; },
      [](std::uint64_t n, std::uint64_t) { return n + 1; });
}

Pi02Matrix zero_ahead_matrix(std::uint64_t budget) {
  return make_matrix(
      "zero-ahead", budget,
      [](std::span<const Nat> a, std::uint64_t n, std::uint64_t m) { return a[n + m] == 0; },
      [](std::uint64_t n, std::uint64_t m) { return n + m + 1; });
}

Pi02Matrix changes_matrix(std::uint64_t budget) {
  return make_matrix(
      "infinitely-many-changes", budget,
      [](std::span<const Nat> a, std::uint64_t n, std::uint64_t m) {
        return a[n + m] != a[n + m + 1];
      },
      [](std::uint64_t n, std::uint64_t m) { return n + m + 2; });
}

Pi02Matrix divergent_sum_matrix(std::uint64_t budget) {
  return make_matrix(
      "divergent-sum", budget,
      [](std::span<const Nat> a, std::uint64_t n, std::uint64_t m) {
        Nat sum = 0;
        for (std::uint64_t i = 0; i <= m; ++i) sum += a[i];
        return sum >= nat_from_u64(n);
      },
      [](std::uint64_t, std::uint64_t m) { return m + 1; });
}

Pi02Matrix first_two_matrix(std::uint64_t budget) {
  return make_matrix(
      "first-two", budget,
      [](std::span<const Nat> a, std::uint64_t, std::uint64_t m) { return a[m] == 2; },
      [](std::uint64_t, std::uint64_t m) { return m + 1; });
}

Pi02Matrix dsl_matrix(std::string name, const DslExpr& relation, const DslExpr& use_bound,
                      std::uint64_t budget) {
  return make_matrix(
      std::move(name), budget,
      [relation](std::span<const Nat> a, std::uint64_t n, std::uint64_t m) {
        return relation.test({a, n, m});
      },
      [use_bound](std::uint64_t n, std::uint64_t m) {
        return to_u64(use_bound.evaluate({{}, n, m}));
      });
}

Pi02Matrix matrix_by_name(std::string_view name, std::uint64_t budget) {
  if (name == "copy") return copy_matrix(budget);
  if (name == "zero-ahead") return zero_ahead_matrix(budget);
  if (name == "infinitely-many-changes") return changes_matrix(budget);
  if (name == "divergent-sum") return divergent_sum_matrix(budget);
  if (name == "first-two") return first_two_matrix(budget);
  throw UnknownCatalogName("unknown matrix '" + std::string(name) + "'");
}

std::vector<std::string> matrix_names() {
  return {"copy", "zero-ahead", "infinitely-many-changes", "divergent-sum", "first-two"};
}

RemetrizeInstance remetrize_instance_by_name(std::string_view name,
                                             std::uint64_t witness_bound) {
  if (name == "cantor-cylinder") {
    return {std::string(name), AmbientSpace(cantor_tree()),
            identity_representation(cylinder_union_tree({{0}}, 1)),
            identity_representation(cylinder_union_tree({{1}}, 1)),
            {}};
  }
  if (name == "cantor-cylinder-union") {
    return {std::string(name), AmbientSpace(cantor_tree()),
            identity_representation(cylinder_union_tree({{0, 0}, {1, 1}}, 1)),
            identity_representation(cylinder_union_tree({{0, 1}, {1, 0}}, 1)),
            {}};
  }
  if (name == "baire-closed-split") {
    const PrunedTree ambient = bounded_tree(2);
    const WitnessClosure has_two(first_two_matrix(witness_bound));
    return {std::string(name), AmbientSpace(ambient), identity_representation(bounded_tree(1)),
            witness_representation(has_two, ambient, witness_bound),
            {has_two.matrix()}};
  }
  if (name == "cantor-infinitely-many-zeros") {
    const PrunedTree ambient = cantor_tree();
    const WitnessClosure zeros(zero_ahead_matrix(witness_bound));
    return {std::string(name), AmbientSpace(ambient),
            witness_representation(zeros, ambient, witness_bound),
            shift_representation(eventually_ones_tree()),
            {zeros.matrix()}};
  }
  if (name == "cantor-empty") {
    return {std::string(name), AmbientSpace(cantor_tree()), std::nullopt,
            identity_representation(cantor_tree()),
            {}};
  }
  throw UnknownCatalogName("unknown re-metrization instance '" + std::string(name) + "'");
}

std::vector<std::string> remetrize_instance_names() {
  return {"cantor-cylinder", "cantor-cylinder-union", "baire-closed-split",
          "cantor-infinitely-many-zeros", "cantor-empty"};
}

std::vector<CertifiedBall> certified_balls(const SumSpace& space, std::uint64_t point_bound,
                                           std::uint64_t depth) {
  std::vector<CertifiedBall> out;
  for (Side side : {Side::A, Side::Ac}) {
    const DensePointFamily& family = space.family(side);
    for (std::uint64_t s = 0; s < point_bound; ++s) {
      const SeqCode code(s);
      if (!family.admissible(code)) continue;
      const TaggedIndex p{side, code};
      out.push_back({p, SeqCode(std::uint64_t{0}), Rational(2)});
      const BairePoint x = space.point(p);
      for (std::uint64_t j = 0; j < depth; ++j) {
        out.push_back({p, x.prefix_code(j + 1), Rational(1, nat_from_u64(j + 1))});
      }
    }
  }
  return out;
}

ZeroDimPresentation luzin_space_by_name(std::string_view name) {
  if (name == "cantor") return cantor_presentation();
  if (name == "discrete-3") return discrete_presentation(3);
  if (name == "baire-closed-bounded-1") {
    return closed_subset_presentation(DensePointFamily(bounded_tree(1)));
  }
  if (name == "baire-closed-no-repeat") {
    return closed_subset_presentation(DensePointFamily(no_repeat_tree()));
  }
  throw UnknownCatalogName("unknown zero-dimensional space '" + std::string(name) + "'");
}

std::vector<std::string> luzin_space_names() {
  return {"cantor", "discrete-3", "baire-closed-bounded-1", "baire-closed-no-repeat"};
}

}  // namespace remetrize
