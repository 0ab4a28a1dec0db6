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

// Command-line front end: validate, embed, witness, remetrize, encode and
// verify instance files. Exit status 0 on success, 1 when a check fails,
// 2 on usage or parse errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "remetrize/catalog.hpp"
#include "remetrize/codes.hpp"
#include "remetrize/errors.hpp"
#include "remetrize/instance.hpp"
#include "remetrize/luzin.hpp"
#include "remetrize/sum_space.hpp"
#include "remetrize/verify.hpp"
#include "remetrize/witness.hpp"

namespace {

using namespace remetrize;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Flags {
  std::string instance;
  std::optional<std::uint64_t> depth;
  std::uint64_t budget = 256;
  std::optional<std::uint64_t> witness_bound;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> size;
  std::string out;
  std::string format = "table";
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read instance file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << content;
}

std::string bits(const BairePoint& p, std::uint64_t count) {
  std::string out;
  for (std::uint64_t i = 0; i < count; ++i) out += p(i).get_str();
  return out;
}

class Command {
 public:
  Command(const Flags& flags, BuiltInstance instance) : flags_(flags), instance_(std::move(instance)) {
    const Bounds& b = instance_.file.bounds;
    if (flags_.witness_bound && *flags_.witness_bound != b.witness_bound) {
      instance_.file.bounds.witness_bound = *flags_.witness_bound;
      instance_ = build_instance(instance_.file);
    }
    options_.depth = flags_.depth.value_or(b.depth);
    options_.budget = flags_.budget;
    options_.seed = flags_.seed;
    options_.size = flags_.size.value_or(b.size);
    report_.instance_id = instance_.file.id;
    report_.seed = flags_.seed;
  }

  Report validate() {
    const RemetrizeInstance& rem = instance_.remetrize;
    report_.checks.push_back(check_tree("tree.ambient", instance_.ambient_tree, options_.depth));
    if (rem.part_a) report_.checks.push_back(check_tree("tree.A", rem.part_a->tree, options_.depth));
    if (rem.part_ac) {
      report_.checks.push_back(check_tree("tree.Ac", rem.part_ac->tree, options_.depth));
    }
    return report_;
  }

  Report embed() {
    const LuzinScheme scheme(instance_.luzin_space, 8 * (options_.depth + 1));
    for (std::uint64_t i = 0; i < options_.size; ++i) {
      report_.data.push_back("embed " + std::to_string(i) + " " +
                             to_string(scheme.embed_dense(i).prefix(options_.depth + 1)));
    }
    report_.checks.push_back(check_luzin(scheme, std::min<std::uint64_t>(options_.size, 30),
                                         options_.depth));
    return report_;
  }

  Report witness() {
    const auto& matrices = instance_.remetrize.matrices;
    if (matrices.empty()) throw UsageError("instance '" + instance_.file.id + "' has no matrices");
    const DensePointFamily family(instance_.ambient_tree);
    for (const Pi02Matrix& matrix : matrices) {
      const WitnessClosure closure(matrix);
      std::mt19937_64 rng(options_.seed);
      for (std::uint64_t i = 0; i < std::min<std::uint64_t>(options_.size, 8); ++i) {
        const BairePoint a = random_branch(family, rng, 16);
        std::string line = "witness " + matrix.name + " " + to_string(a.prefix(16)) + " ";
        try {
          line += to_string(closure.witness_point(a).prefix(options_.depth)) + " modulus " +
                  std::to_string(closure.continuity_modulus(a, options_.depth));
        } catch (const WitnessSearchExhausted&) {
          line += "exhausted";
        }
        report_.data.push_back(line);
      }
      report_.checks.push_back(check_witness(closure, instance_.ambient_tree, options_));
    }
    return report_;
  }

  Report remetrize_command() {
    const RemetrizeInstance& rem = instance_.remetrize;
    const Remetrization result = remetrize::remetrize(rem.ambient, rem.part_a, rem.part_ac);
    CheckResult check;
    check.name = "remetrize";
    CodeFile file;
    if (result.degenerate()) {
      const DenseEnumeration points(rem.ambient.family(), kDefaultScanLimit);
      const RationalMetricTable table =
          tabulate(options_.size, "ambient(" + rem.ambient.tree().description() + ")",
                   [points](std::uint64_t i, std::uint64_t j) {
                     return points.family().distance(points.code(i), points.code(j));
                   });
      file = CodeFile::from_table(instance_.file.id, table);
      file.annotations.push_back("degenerate ambient presentation returned unchanged");
      check.detail = "degenerate";
    } else {
      const SumSpace& sum = *result.sum;
      const InterleavedTable interleaved =
          interleave(sum.family(Side::A), sum.family(Side::Ac), options_.size);
      file = CodeFile::from_table(instance_.file.id, interleaved.table);
      file.annotations.push_back("presentation " + result.presentation.name);
      const BairePoint eps = sum.epsilon_code();
      file.annotations.push_back("epsilon A " + bits(slice(eps, 0), 64));
      file.annotations.push_back("epsilon Ac " + bits(slice(eps, 1), 64));
      std::uint64_t certificates = 0;
      for (const CertifiedBall& ball : certified_balls(sum, 8, options_.depth)) {
        const ExtensionCheck ext =
            sum.check_extension(ball.point, ball.center, ball.radius, options_.size);
        ++certificates;
        file.annotations.push_back("certificate " + side_name(ball.point.side) + ":" +
                                   ball.point.code.str() + " center " + ball.center.str() +
                                   " radius " + ball.radius.str() + " k " +
                                   std::to_string(ext.k) + " sampled " +
                                   std::to_string(ext.sampled));
        for (const SeqCode& out : ext.outside) {
          check.fail("NotInterior: certificate sample " + out.str() + " leaves the ball");
        }
      }
      check.detail = "size=" + std::to_string(options_.size) +
                     " certificates=" + std::to_string(certificates);
    }
    emit(file, check);
    return report_;
  }

  Report encode() {
    const RemetrizeInstance& rem = instance_.remetrize;
    if (!rem.part_a || !rem.part_ac) {
      throw UsageError("instance '" + instance_.file.id + "' is degenerate; nothing to interleave");
    }
    const InterleavedTable interleaved = interleave(DensePointFamily(rem.part_a->tree),
                                                    DensePointFamily(rem.part_ac->tree),
                                                    options_.size);
    CheckResult check;
    check.name = "encode";
    for (const AxiomViolation& v : check_axioms(interleaved.table)) {
      check.fail("MetricAxiom: " + v.str());
    }
    const SpaceCode code = SpaceCode::encode(interleaved.table);
    for (std::uint64_t i = 0; i < interleaved.table.size(); ++i) {
      for (std::uint64_t j = 0; j < interleaved.table.size(); ++j) {
        if (decode_metric(code, i, j) != interleaved.table.dist(i, j)) {
          check.fail("MalformedCode: round trip differs at (" + std::to_string(i) + "," +
                     std::to_string(j) + ")");
        }
      }
    }
    check.detail = "size=" + std::to_string(options_.size);
    emit(CodeFile::from_table(instance_.file.id, interleaved.table), check);
    return report_;
  }

  Report verify() {
    Report report = verify_instance(instance_, options_);
    if (instance_.file.expected && instance_.file.expected->contains("verify")) {
      const std::string wanted = (*instance_.file.expected)["verify"].get<std::string>();
      report.data.push_back(std::string("expected ") + wanted + " " +
                            ((wanted == "pass") == report.ok() ? "matched" : "mismatched"));
    }
    return report;
  }

 private:
  void emit(const CodeFile& file, CheckResult check) {
    std::ostringstream text;
    file.write(text);
    if (!flags_.out.empty()) {
      write_file(flags_.out, text.str());
      report_.data.push_back("wrote " + flags_.out);
    }
    if (flags_.format == "full-report") {
      std::istringstream lines(text.str());
      for (std::string line; std::getline(lines, line);) report_.data.push_back("code " + line);
    }
    report_.checks.push_back(std::move(check));
  }

  Flags flags_;
  BuiltInstance instance_;
  VerifyOptions options_;
  Report report_;
};

int run(const std::string& command, const Flags& flags) {
  const std::string text = read_file(flags.instance);
  const InstanceFile file = parse_instance(text);
  Command cmd(flags, build_instance(file));
  Report report;
  if (command == "validate") {
    report = cmd.validate();
  } else if (command == "embed") {
    report = cmd.embed();
  } else if (command == "witness") {
    report = cmd.witness();
  } else if (command == "remetrize") {
    report = cmd.remetrize_command();
  } else if (command == "encode") {
    report = cmd.encode();
  } else {
    report = cmd.verify();
  }
  std::cout << report.render(flags.format == "full-report");
  return report.ok() ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Re-metrize Polish spaces so that a chosen set becomes clopen"};
  app.require_subcommand(1, 1);
  Flags flags;
  for (const auto& [name, help] : std::vector<std::pair<std::string, std::string>>{
           {"validate", "check that the instance trees are pruned"},
           {"embed", "embed the dense points through the Luzin scheme"},
           {"witness", "compute least-witness points and continuity moduli"},
           {"remetrize", "build the new presentation and write its code file"},
           {"encode", "interleave both sides and write the metric code"},
           {"verify", "run the full property suite"}}) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--instance", flags.instance, "instance file (JSON)")->required();
    sub->add_option("--depth", flags.depth, "validation and certificate depth (default 4)");
    sub->add_option("--budget", flags.budget, "scan budget for distance oracles")
        ->capture_default_str();
    sub->add_option("--witness-bound", flags.witness_bound, "witness search ceiling");
    sub->add_option("--seed", flags.seed, "seed for randomized checks")->capture_default_str();
    sub->add_option("--size", flags.size, "number of interleaved indices K (default 32)");
    sub->add_option("--out", flags.out, "output code file");
    sub->add_option("--format", flags.format, "table or full-report")
        ->check(CLI::IsMember({"table", "full-report"}))
        ->capture_default_str();
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, flags);
  } catch (const ParseError& e) {
    std::cerr << "error: ParseError: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnknownCatalogName& e) {
    std::cerr << "error: UnknownCatalogName: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
    return kExitFailure;
  }
}
