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
#include <vector>

#include "remetrize/baire.hpp"
#include "remetrize/coding.hpp"

namespace remetrize {

/// A closed subset of Baire space given by the node predicate of a pruned
/// tree. Prunedness of an arbitrary predicate cannot be decided, so the tree
/// carries a search ceiling for children and records the depth up to which
/// validate_pruned() has checked the contract.
///
/// Copies share state; the tree is treated as immutable once validated.
class PrunedTree {
 public:
  using NodePredicate = std::function<bool(std::span<const Nat>)>;
  using ChildBound = std::function<std::uint64_t(std::span<const Nat>)>;

  PrunedTree(NodePredicate node, ChildBound child_bound, std::string description);

  bool node(std::span<const Nat> u) const;
  bool node(const SeqCode& s) const;
  /// Children s^k with k > child_bound(s) are never searched.
  std::uint64_t child_bound(std::span<const Nat> u) const;

  std::uint64_t depth_validated() const;
  void mark_validated(std::uint64_t depth) const;
  const std::string& description() const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

struct Violation {
  enum class Kind { EmptyTree, Prunedness, DownwardClosure };
  Kind kind;
  Sequence node;        // the offending node (for DownwardClosure: the inadmissible parent)
  std::optional<Nat> child;

  std::string kind_name() const;
  std::string str() const;
};

struct ValidationReport {
  std::uint64_t depth = 0;
  std::uint64_t nodes_checked = 0;
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

/// Checks nonemptiness, prunedness and downward closure for nodes of length
/// < depth whose entries stay within the child bounds. Every admissible node
/// must have an admissible child within its bound; every inadmissible child
/// of an admissible node must itself have no admissible child. On success
/// the tree records `depth` as its validated depth.
ValidationReport validate_pruned(const PrunedTree& tree, std::uint64_t depth);

/// The dense sequence of leftmost branches alpha_s of a pruned tree.
///
/// For admissible s, alpha_s follows s and then always takes the least
/// admissible child; inadmissible indices are sent to alpha_{s0}, where s0 is
/// the least admissible code.
class DensePointFamily {
 public:
  explicit DensePointFamily(PrunedTree tree);

  const PrunedTree& tree() const;
  const SeqCode& base_index() const;

  bool admissible(const SeqCode& s) const;
  /// s itself when admissible, otherwise s0.
  SeqCode effective_index(const SeqCode& s) const;

  BairePoint leftmost(const SeqCode& s) const;
  /// The leftmost branch through an admissible node, given as a raw sequence.
  /// Unlike leftmost(), no sequence code is formed, so long nodes are cheap.
  BairePoint leftmost_through(std::span<const Nat> node) const;

  /// alpha_s = alpha_t, decided from finitely many values.
  bool equal(const SeqCode& s, const SeqCode& t) const;
  /// The least i with alpha_s(i) != alpha_t(i); nullopt when equal.
  std::optional<std::uint64_t> first_disagreement(const SeqCode& s, const SeqCode& t) const;
  /// p_N(alpha_s, alpha_t) < m/(k+1).
  bool distance_lt(const SeqCode& s, const SeqCode& t, const Nat& m, const Nat& k) const;
  /// p_N(alpha_s, alpha_t) <= m/(k+1).
  bool distance_le(const SeqCode& s, const SeqCode& t, const Nat& m, const Nat& k) const;
  /// The exact value: 0 or 1/(i+1).
  Rational distance(const SeqCode& s, const SeqCode& t) const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

}  // namespace remetrize
