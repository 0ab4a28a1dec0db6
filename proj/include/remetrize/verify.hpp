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
#include <random>
#include <string>
#include <vector>

#include "remetrize/instance.hpp"
#include "remetrize/luzin.hpp"
#include "remetrize/tree.hpp"
#include "remetrize/witness.hpp"

namespace remetrize {

struct CheckResult {
  enum class Status { Pass, Fail, Skip };

  std::string name;
  Status status = Status::Pass;
  std::string detail;
  std::vector<std::string> failures;  // "Kind: message"

  void fail(std::string failure) {
    status = Status::Fail;
    failures.push_back(std::move(failure));
  }
  bool ok() const { return status != Status::Fail; }
};

std::string status_name(CheckResult::Status status);

struct VerifyOptions {
  std::uint64_t depth = 4;
  std::uint64_t budget = 256;
  std::uint64_t seed = 1;
  std::uint64_t size = 32;
  std::uint64_t metric_bound = 150;
  std::uint64_t family_bound = 60;
  std::uint64_t luzin_points = 30;
  std::uint64_t random_points = 100;
  std::uint64_t perturbations = 50;
};

struct Report {
  static constexpr int kVersion = 1;

  std::string instance_id;
  std::uint64_t seed = 0;
  std::vector<std::string> data;  // command output lines, printed before the checks
  std::vector<CheckResult> checks;

  bool ok() const;
  /// "table" lists each check with at most three failures; "full-report"
  /// lists every failure.
  std::string render(bool full) const;
};

/// Nonemptiness, downward closure and prunedness; failures are named by
/// violation kind.
CheckResult check_tree(const std::string& name, const PrunedTree& tree, std::uint64_t depth);

/// leftmost(s) lies in N_s and stays in the tree for 2*depth positions; the
/// exact distance relations agree with a budgeted scan of the points.
CheckResult check_dense_family(const std::string& name, const DensePointFamily& family,
                               std::uint64_t bound, std::uint64_t depth, std::uint64_t budget);

/// Root, refinement, partition and diameter properties of the scheme on
/// dense points below `points`, to the given depth; injectivity of the
/// embedding; prunedness of the image tree.
CheckResult check_luzin(const LuzinScheme& scheme, std::uint64_t points, std::uint64_t depth);

/// Closure of (a, witness(a)), failure of single-coordinate perturbations of
/// the witness, and soundness of the continuity modulus, on random points of
/// the ambient tree.
CheckResult check_witness(const WitnessClosure& closure, const PrunedTree& ambient,
                          const VerifyOptions& options);

/// A random point of a pruned tree: a random admissible walk of the given
/// length, continued by the leftmost branch.
BairePoint random_branch(const DensePointFamily& family, std::mt19937_64& rng,
                         std::uint64_t length, const Sequence& start = {});

/// The whole property suite for one instance; checks appear in a fixed order.
Report verify_instance(const BuiltInstance& instance, const VerifyOptions& options);

}  // namespace remetrize
