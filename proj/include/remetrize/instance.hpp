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
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "remetrize/catalog.hpp"
#include "remetrize/coding.hpp"
#include "remetrize/luzin.hpp"
#include "remetrize/sum_space.hpp"
#include "remetrize/witness.hpp"

namespace remetrize {

struct TreeSpec;

namespace tree_kind {

struct Named {  // a catalog tree: full, cantor, no-repeat, ...
  std::string name;
  friend bool operator==(const Named&, const Named&) = default;
};
struct Bounded {
  std::uint64_t max = 1;
  friend bool operator==(const Bounded&, const Bounded&) = default;
};
struct ConstantEntry {
  std::uint64_t value = 0;
  friend bool operator==(const ConstantEntry&, const ConstantEntry&) = default;
};
struct CylinderUnion {
  std::vector<Sequence> cylinders;
  std::optional<std::uint64_t> entry_max;
  friend bool operator==(const CylinderUnion&, const CylinderUnion&) = default;
};
struct Dsl {
  std::string predicate;
  std::uint64_t child_bound = 0;
  friend bool operator==(const Dsl&, const Dsl&) = default;
};
struct Explicit {
  std::vector<Sequence> nodes;
  std::uint64_t depth = 0;
  std::shared_ptr<const TreeSpec> continuation;
  friend bool operator==(const Explicit& a, const Explicit& b);
};

}  // namespace tree_kind

struct TreeSpec {
  std::variant<tree_kind::Named, tree_kind::Bounded, tree_kind::ConstantEntry, tree_kind::CylinderUnion, tree_kind::Dsl,
               tree_kind::Explicit>
      value;
  friend bool operator==(const TreeSpec&, const TreeSpec&) = default;
};

struct MatrixSpec {
  std::string name;      // catalog name, or a label for a DSL matrix
  std::string relation;  // empty for catalog matrices
  std::string use_bound;
  std::uint64_t budget = 256;
  friend bool operator==(const MatrixSpec&, const MatrixSpec&) = default;
};

/// One side of the partition.
struct SideSpec {
  enum class Kind { Empty, Tree, Matrix };
  Kind kind = Kind::Empty;
  TreeSpec tree;             // Kind::Tree
  std::string map = "identity";  // identity | shift
  MatrixSpec matrix;         // Kind::Matrix
  friend bool operator==(const SideSpec&, const SideSpec&) = default;
};

struct AmbientSpec {
  std::string kind;  // cantor | baire | baire-closed | discrete
  std::optional<TreeSpec> tree;
  std::uint64_t n = 0;
  friend bool operator==(const AmbientSpec&, const AmbientSpec&) = default;
};

struct SetSpec {
  std::string kind;  // trees | matrices | catalog
  SideSpec a;
  SideSpec ac;
  std::string catalog;
  friend bool operator==(const SetSpec&, const SetSpec&) = default;
};

struct Bounds {
  std::uint64_t depth = 4;
  std::uint64_t budget = 256;
  std::uint64_t witness_bound = 8;
  std::uint64_t size = 32;
  friend bool operator==(const Bounds&, const Bounds&) = default;
};

inline constexpr std::string_view kInstanceFormat = "remetrize-instance 1";

struct InstanceFile {
  std::string id;
  AmbientSpec ambient;
  SetSpec set;
  Bounds bounds;
  std::optional<nlohmann::json> expected;
  friend bool operator==(const InstanceFile&, const InstanceFile&) = default;
};

/// Throws ParseError (with line and column in `text`) or UnknownCatalogName.
InstanceFile parse_instance(std::string_view text);
/// Canonical JSON text; parse_instance(print_instance(f)) == f.
std::string print_instance(const InstanceFile& file);

PrunedTree build_tree(const TreeSpec& tree);
Pi02Matrix build_matrix(const MatrixSpec& matrix);

/// Runtime objects for an instance.
struct BuiltInstance {
  InstanceFile file;
  PrunedTree ambient_tree;
  ZeroDimPresentation luzin_space;
  RemetrizeInstance remetrize;
  std::vector<Pi02Matrix> matrices;
};

BuiltInstance build_instance(const InstanceFile& file);

}  // namespace remetrize
