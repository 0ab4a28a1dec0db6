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

#include "remetrize/instance.hpp"

#include <algorithm>

#include "remetrize/dsl.hpp"
#include "remetrize/errors.hpp"

namespace remetrize {

namespace tree_kind {

bool operator==(const Explicit& a, const Explicit& b) {
  if (a.nodes != b.nodes || a.depth != b.depth) return false;
  if (!a.continuation || !b.continuation) return a.continuation == b.continuation;
  return *a.continuation == *b.continuation;
}

}  // namespace tree_kind

namespace {

using nlohmann::json;
using Path = std::vector<std::string>;

struct Location {
  std::size_t line;
  std::size_t column;
};

Location location_of_offset(std::string_view text, std::size_t offset) {
  Location loc{1, 1};
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++loc.line;
      loc.column = 1;
    } else {
      ++loc.column;
    }
  }
  return loc;
}

// The parsed tree carries no positions, so errors are placed by locating
// the keys of the path in order.
class Locator {
 public:
  explicit Locator(std::string_view text) : text_(text) {}

  std::size_t offset(const Path& path) const {
    std::size_t found = 0;
    std::size_t start = 0;
    for (const std::string& key : path) {
      const std::size_t pos = text_.find("\"" + key + "\"", start);
      if (pos == std::string_view::npos) break;
      found = pos;
      start = pos + key.size() + 2;
    }
    return found;
  }

  // Offset of the first character inside the string value at `path`.
  std::size_t value_offset(const Path& path) const {
    const std::size_t key = offset(path);
    const std::size_t colon = text_.find(':', key);
    if (colon == std::string_view::npos) return key;
    const std::size_t quote = text_.find('"', colon);
    return quote == std::string_view::npos ? key : quote + 1;
  }

  [[noreturn]] void fail(const Path& path, const std::string& message) const {
    const Location loc = location_of_offset(text_, offset(path));
    throw ParseError(loc.line, loc.column, join(path) + ": " + message);
  }

  static std::string join(const Path& path) {
    std::string out;
    for (const std::string& key : path) out += (out.empty() ? "" : ".") + key;
    return out.empty() ? "<root>" : out;
  }

 private:
  std::string_view text_;
};

Path extend(Path path, std::string key) {
  path.push_back(std::move(key));
  return path;
}

class Reader {
 public:
  explicit Reader(std::string_view text) : loc_(text), text_(text) {}

  const json& member(const json& object, const Path& path, const std::string& key) const {
    if (!object.is_object()) loc_.fail(path, "expected an object");
    auto it = object.find(key);
    if (it == object.end()) loc_.fail(path, "missing field '" + key + "'");
    return *it;
  }

  std::string string_field(const json& object, const Path& path, const std::string& key) const {
    const json& value = member(object, path, key);
    if (!value.is_string()) loc_.fail(extend(path, key), "expected a string");
    return value.get<std::string>();
  }

  std::uint64_t natural(const json& value, const Path& path) const {
    if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<std::int64_t>() >= 0)) {
      loc_.fail(path, "expected a natural number");
    }
    return value.get<std::uint64_t>();
  }

  std::uint64_t natural_field(const json& object, const Path& path, const std::string& key,
                              std::optional<std::uint64_t> fallback = std::nullopt) const {
    if (fallback && (!object.is_object() || !object.contains(key))) return *fallback;
    return natural(member(object, path, key), extend(path, key));
  }

  Sequence sequence(const json& value, const Path& path) const {
    if (!value.is_array()) loc_.fail(path, "expected an array of naturals");
    Sequence out;
    for (const json& entry : value) out.push_back(nat_from_u64(natural(entry, path)));
    return out;
  }

  std::vector<Sequence> sequences(const json& value, const Path& path) const {
    if (!value.is_array()) loc_.fail(path, "expected an array of sequences");
    std::vector<Sequence> out;
    for (const json& entry : value) out.push_back(sequence(entry, path));
    return out;
  }

  // Parses DSL text, mapping its error position into the instance text.
  void check_dsl(const std::string& source, const Path& path) const {
    try {
      DslExpr::parse(source);
    } catch (const ParseError& e) {
      std::size_t offset = loc_.value_offset(path);
      if (e.line() == 1) offset += e.column() - 1;
      const Location loc = location_of_offset(text_view(), offset);
      throw ParseError(loc.line, loc.column, Locator::join(path) + ": " + e.message());
    }
  }

  TreeSpec tree(const json& value, const Path& path) const {
    const std::string kind = string_field(value, path, "kind");
    if (kind == "cylinder-union" && value.contains("cylinders")) {
      tree_kind::CylinderUnion c;
      c.cylinders = sequences(value["cylinders"], extend(path, "cylinders"));
      if (value.contains("entry_max")) {
        c.entry_max = natural(value["entry_max"], extend(path, "entry_max"));
      }
      return TreeSpec{c};
    }
    if (kind == "bounded") return TreeSpec{tree_kind::Bounded{natural_field(value, path, "max")}};
    if (kind == "constant-entry") {
      return TreeSpec{tree_kind::ConstantEntry{natural_field(value, path, "value")}};
    }
    if (kind == "dsl") {
      tree_kind::Dsl d{string_field(value, path, "predicate"), natural_field(value, path, "child_bound")};
      check_dsl(d.predicate, extend(path, "predicate"));
      return TreeSpec{d};
    }
    if (kind == "explicit") {
      tree_kind::Explicit e;
      e.nodes = sequences(member(value, path, "nodes"), extend(path, "nodes"));
      e.depth = natural_field(value, path, "depth");
      e.continuation = std::make_shared<const TreeSpec>(
          value.contains("continuation")
              ? tree(value["continuation"], extend(path, "continuation"))
              : TreeSpec{tree_kind::Named{"full"}});
      return TreeSpec{e};
    }
    const std::vector<std::string> names = tree_names();
    if (std::find(names.begin(), names.end(), kind) != names.end()) {
      return TreeSpec{tree_kind::Named{kind}};
    }
    throw UnknownCatalogName("unknown tree kind '" + kind + "' at " +
                             Locator::join(extend(path, "kind")));
  }

  MatrixSpec matrix(const json& value, const Path& path) const {
    MatrixSpec m;
    m.budget = natural_field(value, path, "budget", 256);
    if (value.is_object() && value.contains("catalog")) {
      m.name = string_field(value, path, "catalog");
      const std::vector<std::string> names = matrix_names();
      if (std::find(names.begin(), names.end(), m.name) == names.end()) {
        throw UnknownCatalogName("unknown matrix '" + m.name + "' at " +
                                 Locator::join(extend(path, "catalog")));
      }
      return m;
    }
    m.name = string_field(value, path, "name");
    m.relation = string_field(value, path, "relation");
    m.use_bound = string_field(value, path, "use_bound");
    check_dsl(m.relation, extend(path, "relation"));
    check_dsl(m.use_bound, extend(path, "use_bound"));
    return m;
  }

  SideSpec side(const json& value, const Path& path) const {
    SideSpec s;
    if (!value.is_object()) loc_.fail(path, "expected an object");
    if (value.contains("empty")) {
      s.kind = SideSpec::Kind::Empty;
      return s;
    }
    if (value.contains("matrix")) {
      s.kind = SideSpec::Kind::Matrix;
      s.matrix = matrix(value["matrix"], extend(path, "matrix"));
      return s;
    }
    s.kind = SideSpec::Kind::Tree;
    s.tree = tree(member(value, path, "tree"), extend(path, "tree"));
    if (value.contains("map")) s.map = string_field(value, path, "map");
    if (s.map != "identity" && s.map != "shift") {
      loc_.fail(extend(path, "map"), "map must be 'identity' or 'shift'");
    }
    return s;
  }

  AmbientSpec ambient(const json& value, const Path& path) const {
    AmbientSpec a;
    a.kind = string_field(value, path, "kind");
    if (a.kind == "baire-closed") {
      a.tree = tree(member(value, path, "tree"), extend(path, "tree"));
    } else if (a.kind == "discrete") {
      a.n = natural_field(value, path, "n");
      if (a.n == 0) loc_.fail(extend(path, "n"), "a discrete space needs n >= 1");
    } else if (a.kind != "cantor" && a.kind != "baire") {
      throw UnknownCatalogName("unknown space kind '" + a.kind + "' at " +
                               Locator::join(extend(path, "kind")));
    }
    return a;
  }

  SetSpec set(const json& value, const Path& path) const {
    SetSpec s;
    s.kind = string_field(value, path, "kind");
    if (s.kind == "catalog") {
      s.catalog = string_field(value, path, "name");
      const std::vector<std::string> names = remetrize_instance_names();
      if (std::find(names.begin(), names.end(), s.catalog) == names.end()) {
        throw UnknownCatalogName("unknown catalog instance '" + s.catalog + "' at " +
                                 Locator::join(extend(path, "name")));
      }
      return s;
    }
    if (s.kind != "trees" && s.kind != "matrices") {
      loc_.fail(extend(path, "kind"), "set kind must be trees, matrices or catalog");
    }
    s.a = side(member(value, path, "A"), extend(path, "A"));
    s.ac = side(member(value, path, "Ac"), extend(path, "Ac"));
    if (s.a.kind == SideSpec::Kind::Empty && s.ac.kind == SideSpec::Kind::Empty) {
      loc_.fail(path, "A and its complement cannot both be empty");
    }
    const bool has_matrix =
        s.a.kind == SideSpec::Kind::Matrix || s.ac.kind == SideSpec::Kind::Matrix;
    if (s.kind == "trees" && has_matrix) loc_.fail(path, "a tree pair cannot hold a matrix");
    if (s.kind == "matrices" && !has_matrix) loc_.fail(path, "a matrix pair needs a matrix");
    return s;
  }

  Bounds bounds(const json& value, const Path& path) const {
    Bounds b;
    const Bounds defaults;
    b.depth = natural_field(value, path, "depth", defaults.depth);
    b.budget = natural_field(value, path, "budget", defaults.budget);
    b.witness_bound = natural_field(value, path, "witness_bound", defaults.witness_bound);
    b.size = natural_field(value, path, "size", defaults.size);
    for (const auto& [key, v] : {std::pair{"depth", b.depth}, std::pair{"budget", b.budget},
                                 std::pair{"witness_bound", b.witness_bound},
                                 std::pair{"size", b.size}}) {
      if (v == 0) loc_.fail(extend(path, key), "bounds must be positive");
    }
    return b;
  }

  void fail(const Path& path, const std::string& message) const { loc_.fail(path, message); }

 private:
  std::string_view text_view() const { return text_; }

  Locator loc_;
  std::string_view text_;
};

json tree_json(const TreeSpec& t) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, tree_kind::Named>) {
          return {{"kind", v.name}};
        } else if constexpr (std::is_same_v<T, tree_kind::Bounded>) {
          return {{"kind", "bounded"}, {"max", v.max}};
        } else if constexpr (std::is_same_v<T, tree_kind::ConstantEntry>) {
          return {{"kind", "constant-entry"}, {"value", v.value}};
        } else if constexpr (std::is_same_v<T, tree_kind::CylinderUnion>) {
          json cylinders = json::array();
          for (const Sequence& c : v.cylinders) {
            json row = json::array();
            for (const Nat& x : c) row.push_back(to_u64(x));
            cylinders.push_back(row);
          }
          json out = {{"kind", "cylinder-union"}, {"cylinders", cylinders}};
          if (v.entry_max) out["entry_max"] = *v.entry_max;
          return out;
        } else if constexpr (std::is_same_v<T, tree_kind::Dsl>) {
          return {{"kind", "dsl"}, {"predicate", v.predicate}, {"child_bound", v.child_bound}};
        } else {
          json nodes = json::array();
          for (const Sequence& c : v.nodes) {
            json row = json::array();
            for (const Nat& x : c) row.push_back(to_u64(x));
            nodes.push_back(row);
          }
          return {{"kind", "explicit"},
                  {"nodes", nodes},
                  {"depth", v.depth},
                  {"continuation", tree_json(*v.continuation)}};
        }
      },
      t.value);
}

json matrix_json(const MatrixSpec& m) {
  if (m.relation.empty()) return {{"catalog", m.name}, {"budget", m.budget}};
  return {{"name", m.name},
          {"relation", m.relation},
          {"use_bound", m.use_bound},
          {"budget", m.budget}};
}

json side_json(const SideSpec& s) {
  switch (s.kind) {
    case SideSpec::Kind::Empty:
      return {{"empty", true}};
    case SideSpec::Kind::Matrix:
      return {{"matrix", matrix_json(s.matrix)}};
    case SideSpec::Kind::Tree:
      break;
  }
  return {{"tree", tree_json(s.tree)}, {"map", s.map}};
}

}  // namespace

InstanceFile parse_instance(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t offset = e.byte == 0 ? 0 : e.byte - 1;
    const Location loc = location_of_offset(text, offset);
    throw ParseError(loc.line, loc.column, "malformed JSON");
  }
  const Reader reader(text);
  if (!root.is_object()) reader.fail({}, "an instance is a JSON object");
  if (reader.string_field(root, {}, "format") != kInstanceFormat) {
    reader.fail({"format"}, "format must be '" + std::string(kInstanceFormat) + "'");
  }
  InstanceFile file;
  file.id = reader.string_field(root, {}, "id");
  if (file.id.empty() || file.id.find_first_of(" \t\n") != std::string::npos) {
    reader.fail({"id"}, "id must be a nonempty word");
  }
  file.ambient = reader.ambient(reader.member(root, {}, "ambient"), {"ambient"});
  file.set = reader.set(reader.member(root, {}, "set"), {"set"});
  file.bounds = root.contains("bounds") ? reader.bounds(root["bounds"], {"bounds"}) : Bounds{};
  if (root.contains("expected")) {
    if (!root["expected"].is_object()) reader.fail({"expected"}, "expected an object");
    file.expected = root["expected"];
  }
  return file;
}

std::string print_instance(const InstanceFile& file) {
  json ambient = {{"kind", file.ambient.kind}};
  if (file.ambient.tree) ambient["tree"] = tree_json(*file.ambient.tree);
  if (file.ambient.kind == "discrete") ambient["n"] = file.ambient.n;
  json set = {{"kind", file.set.kind}};
  if (file.set.kind == "catalog") {
    set["name"] = file.set.catalog;
  } else {
    set["A"] = side_json(file.set.a);
    set["Ac"] = side_json(file.set.ac);
  }
  json root = {
      {"format", kInstanceFormat},
      {"id", file.id},
      {"ambient", ambient},
      {"set", set},
      {"bounds",
       {{"depth", file.bounds.depth},
        {"budget", file.bounds.budget},
        {"witness_bound", file.bounds.witness_bound},
        {"size", file.bounds.size}}},
  };
  if (file.expected) root["expected"] = *file.expected;
  return root.dump(2) + "\n";
}

PrunedTree build_tree(const TreeSpec& t) {
  return std::visit(
      [](const auto& v) -> PrunedTree {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, tree_kind::Named>) {
          return tree_by_name(v.name);
        } else if constexpr (std::is_same_v<T, tree_kind::Bounded>) {
          return bounded_tree(v.max);
        } else if constexpr (std::is_same_v<T, tree_kind::ConstantEntry>) {
          return constant_entry_tree(v.value);
        } else if constexpr (std::is_same_v<T, tree_kind::CylinderUnion>) {
          return cylinder_union_tree(v.cylinders, v.entry_max);
        } else if constexpr (std::is_same_v<T, tree_kind::Dsl>) {
          return dsl_tree(DslExpr::parse(v.predicate), v.child_bound);
        } else {
          return explicit_tree(v.nodes, v.depth, build_tree(*v.continuation));
        }
      },
      t.value);
}

Pi02Matrix build_matrix(const MatrixSpec& m) {
  if (m.relation.empty()) return matrix_by_name(m.name, m.budget);
  return dsl_matrix(m.name, DslExpr::parse(m.relation), DslExpr::parse(m.use_bound), m.budget);
}

namespace {

std::optional<ClosedRepresentation> build_side(const SideSpec& side, const PrunedTree& ambient,
                                               const Bounds& bounds,
                                               std::vector<Pi02Matrix>& matrices) {
  switch (side.kind) {
    case SideSpec::Kind::Empty:
      return std::nullopt;
    case SideSpec::Kind::Tree: {
      const PrunedTree tree = build_tree(side.tree);
      return side.map == "shift" ? shift_representation(tree) : identity_representation(tree);
    }
    case SideSpec::Kind::Matrix: {
      const WitnessClosure closure(build_matrix(side.matrix));
      matrices.push_back(closure.matrix());
      return witness_representation(closure, ambient, bounds.witness_bound);
    }
  }
  return std::nullopt;
}

}  // namespace

BuiltInstance build_instance(const InstanceFile& file) {
  PrunedTree ambient_tree = full_tree();
  ZeroDimPresentation luzin_space;
  const AmbientSpec& a = file.ambient;
  if (a.kind == "cantor") {
    ambient_tree = cantor_tree();
    luzin_space = cantor_presentation();
  } else if (a.kind == "baire") {
    luzin_space = closed_subset_presentation(DensePointFamily(ambient_tree));
  } else if (a.kind == "baire-closed") {
    ambient_tree = build_tree(*a.tree);
    luzin_space = closed_subset_presentation(DensePointFamily(ambient_tree));
  } else if (a.kind == "discrete") {
    ambient_tree = discrete_tree(a.n);
    luzin_space = discrete_presentation(a.n);
  } else {
    throw UnknownCatalogName("unknown space kind '" + a.kind + "'");
  }

  if (file.set.kind == "catalog") {
    RemetrizeInstance instance =
        remetrize_instance_by_name(file.set.catalog, file.bounds.witness_bound);
    if (instance.ambient.tree().description() != ambient_tree.description()) {
      throw ParseError(1, 1,
                       "catalog instance '" + file.set.catalog + "' lives in " +
                           instance.ambient.tree().description() + ", not " +
                           ambient_tree.description());
    }
    instance.id = file.id;
    return BuiltInstance{file, ambient_tree, luzin_space, std::move(instance), {}};
  }

  std::vector<Pi02Matrix> matrices;
  auto part_a = build_side(file.set.a, ambient_tree, file.bounds, matrices);
  auto part_ac = build_side(file.set.ac, ambient_tree, file.bounds, matrices);
  RemetrizeInstance instance{file.id, AmbientSpace(ambient_tree), std::move(part_a),
                             std::move(part_ac), matrices};
  return BuiltInstance{file, ambient_tree, luzin_space, std::move(instance), matrices};
}

}  // namespace remetrize
