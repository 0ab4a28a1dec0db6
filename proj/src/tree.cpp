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

#include "remetrize/tree.hpp"

#include <atomic>
#include <mutex>
#include <unordered_map>

#include "remetrize/errors.hpp"

namespace remetrize {

struct PrunedTree::State {
  NodePredicate node;
  ChildBound child_bound;
  std::string description;
  std::atomic<std::uint64_t> depth_validated{0};
};

PrunedTree::PrunedTree(NodePredicate node, ChildBound child_bound, std::string description)
    : state_(std::make_shared<State>()) {
  state_->node = std::move(node);
  state_->child_bound = std::move(child_bound);
  state_->description = std::move(description);
}

bool PrunedTree::node(std::span<const Nat> u) const { return state_->node(u); }

bool PrunedTree::node(const SeqCode& s) const { return state_->node(decode(s)); }

std::uint64_t PrunedTree::child_bound(std::span<const Nat> u) const {
  return state_->child_bound(u);
}

std::uint64_t PrunedTree::depth_validated() const { return state_->depth_validated.load(); }

void PrunedTree::mark_validated(std::uint64_t depth) const {
  std::uint64_t current = state_->depth_validated.load();
  while (current < depth && !state_->depth_validated.compare_exchange_weak(current, depth)) {
  }
}

const std::string& PrunedTree::description() const { return state_->description; }

std::string Violation::kind_name() const {
  switch (kind) {
    case Kind::EmptyTree:
      return "EmptyTree";
    case Kind::Prunedness:
      return "PrunednessViolation";
    case Kind::DownwardClosure:
      return "DownwardClosureViolation";
  }
  return "Unknown";
}

std::string Violation::str() const {
  std::string out = kind_name() + "(" + encode(node).str() + " " + to_string(node);
  if (child) out += ", " + child->get_str();
  return out + ")";
}

namespace {

void validate_from(const PrunedTree& tree, Sequence& u, std::uint64_t depth,
                   ValidationReport& report) {
  ++report.nodes_checked;
  if (u.size() >= depth) return;
  const std::uint64_t bound = tree.child_bound(u);
  bool has_child = false;
  for (std::uint64_t k = 0; k <= bound; ++k) {
    u.push_back(nat_from_u64(k));
    if (tree.node(u)) {
      has_child = true;
      validate_from(tree, u, depth, report);
    } else if (u.size() < depth) {
      const std::uint64_t inner = tree.child_bound(u);
      for (std::uint64_t j = 0; j <= inner; ++j) {
        u.push_back(nat_from_u64(j));
        const bool bad = tree.node(u);
        u.pop_back();
        if (bad) {
          report.violations.push_back(
              {Violation::Kind::DownwardClosure, u, nat_from_u64(j)});
        }
      }
    }
    u.pop_back();
  }
  if (!has_child) {
    report.violations.push_back({Violation::Kind::Prunedness, u, std::nullopt});
  }
}

}  // namespace

ValidationReport validate_pruned(const PrunedTree& tree, std::uint64_t depth) {
  if (depth == 0) throw std::invalid_argument("validate_pruned needs depth >= 1");
  ValidationReport report;
  report.depth = depth;
  Sequence root;
  if (!tree.node(root)) {
    report.violations.push_back({Violation::Kind::EmptyTree, root, std::nullopt});
    return report;
  }
  validate_from(tree, root, depth, report);
  if (report.ok()) tree.mark_validated(depth);
  return report;
}

struct DensePointFamily::State {
  explicit State(PrunedTree t) : tree(std::move(t)) {}

  PrunedTree tree;
  SeqCode base;
  std::mutex mutex;
  std::unordered_map<SeqCode, BairePoint, SeqCodeHash> points;
  std::unordered_map<SeqCode, bool, SeqCodeHash> admissible;
};

DensePointFamily::DensePointFamily(PrunedTree tree)
    : state_(std::make_shared<State>(std::move(tree))) {
  // s0: the least admissible code. The root is admissible for a nonempty
  // tree, so the scan stops at once; it is kept for trees that break the
  // contract.
  Nat s = 0;
  const Nat limit = 1 << 20;
  while (!state_->tree.node(SeqCode(s))) {
    if (++s > limit) throw InvalidTree("no admissible node found: " + state_->tree.description());
  }
  state_->base = SeqCode(s);
}

const PrunedTree& DensePointFamily::tree() const { return state_->tree; }

const SeqCode& DensePointFamily::base_index() const { return state_->base; }

bool DensePointFamily::admissible(const SeqCode& s) const {
  {
    std::lock_guard lock(state_->mutex);
    auto it = state_->admissible.find(s);
    if (it != state_->admissible.end()) return it->second;
  }
  const bool value = state_->tree.node(s);
  std::lock_guard lock(state_->mutex);
  state_->admissible.emplace(s, value);
  return value;
}

SeqCode DensePointFamily::effective_index(const SeqCode& s) const {
  return admissible(s) ? s : state_->base;
}

BairePoint DensePointFamily::leftmost(const SeqCode& index) const {
  const SeqCode s = effective_index(index);
  {
    std::lock_guard lock(state_->mutex);
    auto it = state_->points.find(s);
    if (it != state_->points.end()) return it->second;
  }
  BairePoint point = leftmost_through(decode(s));
  std::lock_guard lock(state_->mutex);
  return state_->points.emplace(s, point).first->second;
}

BairePoint DensePointFamily::leftmost_through(std::span<const Nat> node) const {
  Sequence fixed(node.begin(), node.end());
  PrunedTree tree = state_->tree;
  std::string label = "leftmost(" + tree.description() + "," + to_string(fixed) + ")";
  return BairePoint::from_steps(
      [fixed = std::move(fixed), tree](std::span<const Nat> prefix) -> Nat {
        if (prefix.size() < fixed.size()) return fixed[prefix.size()];
        Sequence u(prefix.begin(), prefix.end());
        const std::uint64_t bound = tree.child_bound(u);
        u.emplace_back();
        for (std::uint64_t k = 0; k <= bound; ++k) {
          u.back() = nat_from_u64(k);
          if (tree.node(u)) return u.back();
        }
        u.pop_back();
        throw ChildSearchExhausted("no admissible child of " + to_string(u) + " within bound " +
                                   std::to_string(bound));
      },
      std::move(label));
}

namespace {

// alpha_s = alpha_t for admissible s, t: one is a prefix of the other and the
// longer one's extra entries are what the shorter one's leftmost branch picks.
bool admissible_equal(const DensePointFamily& fam, const SeqCode& s, const SeqCode& t) {
  Sequence u = decode(s);
  Sequence v = decode(t);
  auto extends = [&](const Sequence& shorter, const Sequence& longer, const SeqCode& shorter_code) {
    if (!is_prefix(shorter, longer)) return false;
    BairePoint alpha = fam.leftmost(shorter_code);
    for (std::size_t i = shorter.size(); i < longer.size(); ++i) {
      if (alpha(i) != longer[i]) return false;
    }
    return true;
  };
  return extends(u, v, s) || extends(v, u, t);
}

}  // namespace

bool DensePointFamily::equal(const SeqCode& s, const SeqCode& t) const {
  const bool as = admissible(s);
  const bool at = admissible(t);
  if (as && at) return admissible_equal(*this, s, t);
  if (as) return admissible_equal(*this, s, state_->base);
  if (at) return admissible_equal(*this, t, state_->base);
  return true;
}

std::optional<std::uint64_t> DensePointFamily::first_disagreement(const SeqCode& s,
                                                                  const SeqCode& t) const {
  if (equal(s, t)) return std::nullopt;
  const SeqCode es = effective_index(s);
  const SeqCode et = effective_index(t);
  // Unequal dense points already differ below the longer fixed prefix.
  const std::uint64_t horizon = std::max(to_u64(lh(es)), to_u64(lh(et)));
  BairePoint a = leftmost(es);
  BairePoint b = leftmost(et);
  for (std::uint64_t i = 0; i < horizon; ++i) {
    if (a(i) != b(i)) return i;
  }
  throw std::logic_error("dense points " + es.str() + " and " + et.str() +
                         " are unequal but agree on their fixed prefixes");
}

bool DensePointFamily::distance_lt(const SeqCode& s, const SeqCode& t, const Nat& m,
                                   const Nat& k) const {
  auto i = first_disagreement(s, t);
  if (!i) return m > 0;
  return k + 1 < nat_from_u64(*i + 1) * m;
}

bool DensePointFamily::distance_le(const SeqCode& s, const SeqCode& t, const Nat& m,
                                   const Nat& k) const {
  auto i = first_disagreement(s, t);
  if (!i) return true;
  return k + 1 <= nat_from_u64(*i + 1) * m;
}

Rational DensePointFamily::distance(const SeqCode& s, const SeqCode& t) const {
  auto i = first_disagreement(s, t);
  if (!i) return Rational(0);
  return Rational(1, nat_from_u64(*i + 1));
}

}  // namespace remetrize
