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

#include "remetrize/verify.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "remetrize/codes.hpp"
#include "remetrize/errors.hpp"

namespace remetrize {

std::string status_name(CheckResult::Status status) {
  switch (status) {
    case CheckResult::Status::Pass:
      return "PASS";
    case CheckResult::Status::Fail:
      return "FAIL";
    case CheckResult::Status::Skip:
      return "SKIP";
  }
  return "?";
}

bool Report::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok(); });
}

std::string Report::render(bool full) const {
  std::ostringstream os;
  os << "remetrize-report " << kVersion << "\n";
  os << "instance " << instance_id << "\n";
  os << "seed " << seed << "\n";
  for (const std::string& line : data) os << line << "\n";
  for (const CheckResult& c : checks) {
    os << "check " << c.name << " " << status_name(c.status);
    if (!c.detail.empty()) os << " " << c.detail;
    os << "\n";
  }
  for (const CheckResult& c : checks) {
    const std::size_t shown = full ? c.failures.size() : std::min<std::size_t>(3, c.failures.size());
    for (std::size_t i = 0; i < shown; ++i) os << "failure " << c.name << " " << c.failures[i] << "\n";
    if (shown < c.failures.size()) {
      os << "failure " << c.name << " (" << c.failures.size() - shown << " more)\n";
    }
  }
  os << "result " << (ok() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

namespace {

std::string error_text(const std::exception& e) {
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    return std::string(err->kind()) + ": " + err->what();
  }
  return std::string("Error: ") + e.what();
}

// Runs body, turning a library error into a failure of the check.
template <typename Body>
CheckResult guarded(std::string name, Body body) {
  CheckResult result;
  result.name = std::move(name);
  try {
    body(result);
  } catch (const std::exception& e) {
    result.fail(error_text(e));
  }
  return result;
}

CheckResult skipped(std::string name, std::string why) {
  CheckResult result;
  result.name = std::move(name);
  result.status = CheckResult::Status::Skip;
  result.detail = std::move(why);
  return result;
}

}  // namespace

CheckResult check_tree(const std::string& name, const PrunedTree& tree, std::uint64_t depth) {
  return guarded(name, [&](CheckResult& r) {
    const ValidationReport report = validate_pruned(tree, depth);
    r.detail = "depth=" + std::to_string(depth) + " nodes=" + std::to_string(report.nodes_checked);
    for (const Violation& v : report.violations) r.fail(v.kind_name() + ": " + v.str());
  });
}

CheckResult check_dense_family(const std::string& name, const DensePointFamily& family,
                               std::uint64_t bound, std::uint64_t depth, std::uint64_t budget) {
  return guarded(name, [&](CheckResult& r) {
    const PrunedTree& tree = family.tree();
    std::vector<SeqCode> codes;
    for (std::uint64_t s = 0; s < bound; ++s) {
      const SeqCode code(s);
      if (!family.admissible(code)) continue;
      codes.push_back(code);
      const Sequence u = decode(code);
      const BairePoint alpha = family.leftmost(code);
      if (!in_basic_nbhd(alpha, std::span<const Nat>(u))) {
        r.fail("leftmost(" + code.str() + ") leaves N_s");
      }
      const Sequence prefix = alpha.prefix(u.size() + 2 * depth);
      for (std::size_t n = 0; n <= prefix.size(); ++n) {
        if (!tree.node(std::span<const Nat>(prefix).first(n))) {
          r.fail("leftmost(" + code.str() + ") leaves the tree at length " + std::to_string(n));
          break;
        }
      }
    }
    std::uint64_t pairs = 0;
    for (const SeqCode& s : codes) {
      const BairePoint a = family.leftmost(s);
      for (const SeqCode& t : codes) {
        ++pairs;
        const DistanceResult oracle = distance(a, family.leftmost(t), budget);
        const Rational exact = family.distance(s, t);
        const bool agrees = oracle.exact() ? oracle.value == exact : exact.sign() == 0;
        if (!agrees) {
          r.fail("distance(" + s.str() + "," + t.str() + ") = " + exact.str() +
                 " but the scan finds " + oracle.value.str());
        }
      }
    }
    r.detail = "points=" + std::to_string(codes.size()) + " pairs=" + std::to_string(pairs);
  });
}

CheckResult check_luzin(const LuzinScheme& scheme, std::uint64_t points, std::uint64_t depth) {
  return guarded("luzin", [&](CheckResult& r) {
    const ZeroDimPresentation& space = scheme.space();
    std::vector<Sequence> embedded;
    for (std::uint64_t i = 0; i < points; ++i) {
      embedded.push_back(scheme.embed_dense(i).prefix(depth + 1));
      if (!scheme.dense_cell_member(i, {})) r.fail("root cell misses r_" + std::to_string(i));
    }
    std::set<Sequence> cells;
    for (const Sequence& f : embedded) {
      for (std::uint64_t l = 0; l <= depth; ++l) cells.emplace(f.begin(), f.begin() + l);
    }
    for (const Sequence& u : cells) {
      const std::span<const Nat> cell(u);
      std::vector<std::uint64_t> members;
      for (std::uint64_t i = 0; i < points; ++i) {
        if (scheme.dense_cell_member(i, cell)) members.push_back(i);
      }
      // Diameter below 2^{-lh(u)} in the rescaled metric.
      for (std::uint64_t i : members) {
        for (std::uint64_t j : members) {
          if (!(space.dist(i, j) < Rational::pow2_inverse(u.size()))) {
            r.fail("cell " + to_string(u) + " has diameter >= 2^-" + std::to_string(u.size()) +
                   " at (" + std::to_string(i) + "," + std::to_string(j) + ")");
          }
        }
      }
      if (u.size() >= depth) continue;
      // Children refine the cell and partition it.
      Sequence child = u;
      child.push_back(0);
      std::vector<std::uint64_t> hits(points, 0);
      for (std::uint64_t k = 0; k < points; ++k) {
        child.back() = nat_from_u64(k);
        for (std::uint64_t i = 0; i < points; ++i) {
          if (!scheme.dense_cell_member(i, child)) continue;
          ++hits[i];
          if (!std::binary_search(members.begin(), members.end(), i)) {
            r.fail("cell " + to_string(child) + " is not inside its parent at r_" +
                   std::to_string(i));
          }
        }
      }
      for (std::uint64_t i : members) {
        if (hits[i] != 1) {
          r.fail("r_" + std::to_string(i) + " lies in " + std::to_string(hits[i]) +
                 " children of " + to_string(u));
        }
      }
    }
    // Injectivity on distinct dense points.
    for (std::uint64_t i = 0; i < points; ++i) {
      for (std::uint64_t j = i + 1; j < points; ++j) {
        if (space.dist(i, j).sign() == 0) continue;
        if (!first_disagreement(scheme.embed_dense(i), scheme.embed_dense(j), scheme.max_depth())) {
          r.fail("embed identifies r_" + std::to_string(i) + " and r_" + std::to_string(j));
        }
      }
    }
    // Prunedness of the image tree over entries below `points`.
    std::vector<Sequence> frontier{{}};
    std::uint64_t nodes = 0;
    for (std::uint64_t level = 0; level < depth; ++level) {
      std::vector<Sequence> next;
      for (const Sequence& u : frontier) {
        ++nodes;
        bool has_child = false;
        const std::uint64_t last = u.empty() ? 0 : to_u64(u.back());
        Sequence child = u;
        child.push_back(0);
        for (std::uint64_t k = 0; k < std::max(points, last + 1); ++k) {
          child.back() = nat_from_u64(k);
          if (!scheme.image_node(child)) continue;
          has_child = true;
          if (k < points) next.push_back(child);
        }
        if (!has_child) r.fail("PrunednessViolation: image node " + to_string(u) + " has no child");
      }
      frontier = std::move(next);
    }
    r.detail = "points=" + std::to_string(points) + " depth=" + std::to_string(depth) +
               " cells=" + std::to_string(cells.size()) + " image_nodes=" + std::to_string(nodes);
  });
}

BairePoint random_branch(const DensePointFamily& family, std::mt19937_64& rng,
                         std::uint64_t length, const Sequence& start) {
  const PrunedTree& tree = family.tree();
  Sequence u = start;
  while (u.size() < length) {
    std::vector<std::uint64_t> children;
    const std::uint64_t bound = tree.child_bound(u);
    u.push_back(0);
    for (std::uint64_t k = 0; k <= bound; ++k) {
      u.back() = nat_from_u64(k);
      if (tree.node(u)) children.push_back(k);
    }
    if (children.empty()) {
      throw ChildSearchExhausted("no child of " + to_string(std::span<const Nat>(u).first(u.size() - 1)));
    }
    u.back() = nat_from_u64(children[rng() % children.size()]);
  }
  return family.leftmost_through(u);
}

namespace {

BairePoint with_coordinate(const BairePoint& b, std::uint64_t position, std::uint64_t value) {
  return BairePoint::from_rule([b, position, value](BairePoint::Position n) -> Nat {
    return n == position ? nat_from_u64(value) : b(n);
  });
}

constexpr std::uint64_t kWitnessDepth = 16;
constexpr std::uint64_t kModulusPrecision = 8;

}  // namespace

CheckResult check_witness(const WitnessClosure& closure, const PrunedTree& ambient,
                          const VerifyOptions& options) {
  return guarded("witness." + closure.matrix().name, [&](CheckResult& r) {
    const DensePointFamily family(ambient);
    std::mt19937_64 rng(options.seed);
    const std::uint64_t budget = closure.matrix().per_n_budget;
    std::uint64_t used = 0, skipped_points = 0, perturbed = 0, tails = 0;
    for (std::uint64_t p = 0; p < options.random_points; ++p) {
      const BairePoint a = random_branch(family, rng, 2 * kWitnessDepth);
      const BairePoint beta = closure.witness_point(a);
      try {
        beta.prefix(kWitnessDepth);
      } catch (const WitnessSearchExhausted&) {
        ++skipped_points;
        continue;
      }
      ++used;
      if (!closure.check_closure(a, beta, kWitnessDepth)) {
        r.fail("F(a, witness(a)) fails for " + a.description());
      }
      for (std::uint64_t n = 0; n < kWitnessDepth; ++n) {
        const std::uint64_t bn = to_u64(beta(n));
        for (std::uint64_t v = 0; v <= budget; ++v) {
          if (v == bn) continue;
          ++perturbed;
          if (closure.check_closure(a, with_coordinate(beta, n, v), kWitnessDepth)) {
            r.fail("witness is not unique: coordinate " + std::to_string(n) + " = " +
                   std::to_string(v) + " also passes for " + a.description());
          }
        }
      }
      const std::uint64_t modulus = closure.continuity_modulus(a, kModulusPrecision);
      const Sequence head = a.prefix(modulus);
      const Sequence expected = beta.prefix(kModulusPrecision);
      for (std::uint64_t t = 0; t < options.perturbations; ++t) {
        ++tails;
        const BairePoint other = random_branch(family, rng, modulus + kWitnessDepth, head);
        try {
          if (closure.witness_point(other).prefix(kModulusPrecision) != expected) {
            r.fail("modulus " + std::to_string(modulus) + " is unsound at " + a.description());
          }
        } catch (const WitnessSearchExhausted& e) {
          r.fail("modulus " + std::to_string(modulus) + " is unsound: " + e.what());
        }
      }
    }
    r.detail = "points=" + std::to_string(used) + " exhausted=" + std::to_string(skipped_points) +
               " perturbations=" + std::to_string(perturbed) + " tails=" + std::to_string(tails);
  });
}

namespace {

void add_sum_checks(const SumSpace& sum, const VerifyOptions& options, Report& report) {
  const SpacePresentation presentation = sum.presentation();
  const std::uint64_t bound = options.metric_bound;

  report.checks.push_back(guarded("metric-axioms", [&](CheckResult& r) {
    std::vector<TaggedIndex> resolved;
    for (std::uint64_t i = 0; i < bound; ++i) resolved.push_back(sum.resolve(nat_from_u64(i)));
    const auto violations = check_axioms(
        bound,
        [&](std::uint64_t i, std::uint64_t j) { return sum.distance(resolved[i], resolved[j]); },
        [&](std::uint64_t i, std::uint64_t j) {
          return resolved[i].side == resolved[j].side &&
                 sum.family(resolved[i].side).equal(resolved[i].code, resolved[j].code);
        });
    for (const AxiomViolation& v : violations) r.fail("MetricAxiom: " + v.str());
    r.detail = "indices=" + std::to_string(bound);
  }));

  report.checks.push_back(guarded("clopen", [&](CheckResult& r) {
    for (std::uint64_t i = 0; i < bound; ++i) {
      const TaggedIndex p = sum.resolve(nat_from_u64(i));
      if (sum.member_of_a(p) != (p.side == Side::A)) {
        r.fail("ball of radius 3/2 misclassifies index " + std::to_string(i));
      }
    }
    r.detail = "indices=" + std::to_string(bound);
  }));

  report.checks.push_back(guarded("epsilon", [&](CheckResult& r) {
    const BairePoint eps = sum.epsilon_code();
    const std::uint64_t codes = 300;
    for (Side side : {Side::A, Side::Ac}) {
      const BairePoint part = slice(eps, Nat(static_cast<int>(side)));
      for (std::uint64_t s = 0; s < codes; ++s) {
        const bool bit = part(s) == 1;
        if (bit != sum.representation(side).tree.node(SeqCode(s))) {
          r.fail("eps slice " + side_name(side) + " disagrees with the tree at " +
                 std::to_string(s));
        }
      }
    }
    r.detail = "codes=" + std::to_string(codes);
  }));

  report.checks.push_back(guarded("extension", [&](CheckResult& r) {
    std::uint64_t balls = 0, sampled = 0;
    for (const CertifiedBall& ball : certified_balls(sum, 30, options.depth)) {
      ++balls;
      const ExtensionCheck check = sum.check_extension(ball.point, ball.center, ball.radius, bound);
      sampled += check.sampled;
      for (const SeqCode& out : check.outside) {
        r.fail("new ball of radius 1/" + std::to_string(check.k + 1) + " around " +
               side_name(ball.point.side) + ":" + ball.point.code.str() + " leaves B(" +
               ball.center.str() + ", " + ball.radius.str() + ") at " + out.str());
      }
    }
    r.detail = "balls=" + std::to_string(balls) + " sampled=" + std::to_string(sampled);
  }));

  for (Side side : {Side::A, Side::Ac}) {
    const std::string tag = side_name(side);
    report.checks.push_back(guarded("continuity.map." + tag, [&](CheckResult& r) {
      const ContinuityCheck c = sum.check_map_continuity(side, 40, options.depth);
      for (const std::string& f : c.failures) r.fail("Continuity: " + f);
      r.detail = "pairs=" + std::to_string(c.pairs_checked);
    }));
    if (sum.representation(side).has_inverse()) {
      report.checks.push_back(guarded("continuity.inverse." + tag, [&](CheckResult& r) {
        const ContinuityCheck c =
            sum.check_inverse_continuity(side, 40, options.depth, 2 * options.depth + 2);
        for (const std::string& f : c.failures) r.fail("Continuity: " + f);
        r.detail = "pairs=" + std::to_string(c.pairs_checked);
      }));
    } else {
      report.checks.push_back(
          skipped("continuity.inverse." + tag, "no-continuous-inverse-declared"));
    }
    report.checks.push_back(guarded("injective." + tag, [&](CheckResult& r) {
      const ContinuityCheck c = sum.check_injective(side, 60, options.budget);
      for (const std::string& f : c.failures) r.fail("Injectivity: " + f);
      r.detail = "pairs=" + std::to_string(c.pairs_checked);
    }));
  }

  report.checks.push_back(guarded("codes", [&](CheckResult& r) {
    const InterleavedTable interleaved =
        interleave(sum.family(Side::A), sum.family(Side::Ac), options.size);
    const RationalMetricTable& table = interleaved.table;
    for (const AxiomViolation& v : check_axioms(table)) r.fail("MetricAxiom: " + v.str());
    const SpaceCode code = SpaceCode::encode(table);
    auto tagged = [&](std::uint64_t i) {
      return i % 2 == 0 ? TaggedIndex{Side::A, interleaved.codes_a[i / 2]}
                        : TaggedIndex{Side::Ac, interleaved.codes_ac[i / 2]};
    };
    for (std::uint64_t i = 0; i < table.size(); ++i) {
      for (std::uint64_t j = 0; j < table.size(); ++j) {
        if (decode_metric(code, i, j) != table.dist(i, j)) {
          r.fail("MalformedCode: decode differs at (" + std::to_string(i) + "," +
                 std::to_string(j) + ")");
        }
        if (table.dist(i, j) != sum.distance(tagged(i), tagged(j))) {
          r.fail("code distance differs from the presentation at (" + std::to_string(i) + "," +
                 std::to_string(j) + ")");
        }
      }
    }
    std::ostringstream first, second;
    CodeFile::from_table(report.instance_id, table).write(first);
    CodeFile::from_table(report.instance_id,
                         interleave(sum.family(Side::A), sum.family(Side::Ac), options.size).table)
        .write(second);
    if (first.str() != second.str()) r.fail("Determinism: two encodings differ");
    r.detail = "size=" + std::to_string(table.size());
  }));
}

}  // namespace

Report verify_instance(const BuiltInstance& instance, const VerifyOptions& options) {
  Report report;
  report.instance_id = instance.file.id;
  report.seed = options.seed;
  const RemetrizeInstance& rem = instance.remetrize;

  report.checks.push_back(check_tree("tree.ambient", instance.ambient_tree, options.depth));
  if (rem.part_a) report.checks.push_back(check_tree("tree.A", rem.part_a->tree, options.depth));
  if (rem.part_ac) {
    report.checks.push_back(check_tree("tree.Ac", rem.part_ac->tree, options.depth));
  }
  const bool trees_ok = report.ok();

  if (!trees_ok) {
    for (const char* name : {"dense-family", "remetrize", "luzin", "witness"}) {
      report.checks.push_back(skipped(name, "tree-validation-failed"));
    }
    return report;
  }

  report.checks.push_back(check_dense_family("dense-family.ambient", rem.ambient.family(),
                                             options.family_bound, options.depth, options.budget));
  const Remetrization result = remetrize(rem.ambient, rem.part_a, rem.part_ac);
  if (result.degenerate()) {
    report.checks.push_back(guarded("remetrize", [&](CheckResult& r) {
      // The ambient presentation is returned unchanged.
      const SpacePresentation ambient = rem.ambient.presentation();
      for (std::uint64_t i = 0; i < 40; ++i) {
        for (std::uint64_t j = 0; j < 40; ++j) {
          const Nat a = nat_from_u64(i), b = nat_from_u64(j);
          if (result.presentation.distance(a, b) != ambient.distance(a, b)) {
            r.fail("degenerate presentation differs from the ambient one at (" +
                   std::to_string(i) + "," + std::to_string(j) + ")");
          }
        }
      }
      r.detail = "degenerate";
    }));
  } else {
    const SumSpace& sum = *result.sum;
    for (Side side : {Side::A, Side::Ac}) {
      report.checks.push_back(check_dense_family("dense-family." + side_name(side),
                                                 sum.family(side), options.family_bound,
                                                 options.depth, options.budget));
    }
    add_sum_checks(sum, options, report);
  }

  report.checks.push_back(guarded("luzin", [&](CheckResult& r) {
    const LuzinScheme scheme(instance.luzin_space, 8 * (options.depth + 1));
    r = check_luzin(scheme, options.luzin_points, options.depth);
  }));

  for (const Pi02Matrix& matrix : rem.matrices) {
    report.checks.push_back(check_witness(WitnessClosure(matrix), instance.ambient_tree, options));
  }
  return report;
}

}  // namespace remetrize
