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

#include "remetrize/codes.hpp"

#include <istream>
#include <optional>
#include <mutex>
#include <ostream>
#include <sstream>

#include "remetrize/coding.hpp"
#include "remetrize/errors.hpp"

namespace remetrize {

RationalMetricTable::RationalMetricTable(std::vector<std::vector<Rational>> rows, TailRule tail)
    : rows_(std::move(rows)), tail_(std::move(tail)) {
  for (const auto& row : rows_) {
    if (row.size() != rows_.size()) throw std::invalid_argument("metric table must be square");
  }
}

Rational RationalMetricTable::dist(std::uint64_t i, std::uint64_t j) const {
  if (i < rows_.size() && j < rows_.size()) return rows_[i][j];
  return tail_.dist(i, j);
}

RationalMetricTable tabulate(std::uint64_t size, std::string descriptor,
                             std::function<Rational(std::uint64_t, std::uint64_t)> dist) {
  std::vector<std::vector<Rational>> rows(size, std::vector<Rational>(size));
  for (std::uint64_t i = 0; i < size; ++i) {
    for (std::uint64_t j = 0; j < size; ++j) rows[i][j] = dist(i, j);
  }
  return RationalMetricTable(std::move(rows), TailRule{std::move(descriptor), std::move(dist)});
}

RationalMetricTable discrete_metric_table(std::uint64_t size) {
  return tabulate(size, "discrete", [](std::uint64_t i, std::uint64_t j) {
    return i == j ? Rational(0) : Rational(1);
  });
}

std::string AxiomViolation::str() const {
  switch (kind) {
    case Kind::Negative:
      return "negative distance at (" + std::to_string(i) + "," + std::to_string(j) + ")";
    case Kind::Identity:
      return "identity of indiscernibles fails at (" + std::to_string(i) + "," +
             std::to_string(j) + ")";
    case Kind::Symmetry:
      return "asymmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")";
    case Kind::Triangle:
      return "triangle inequality fails at (" + std::to_string(i) + "," + std::to_string(j) +
             "," + std::to_string(k) + ")";
  }
  return "unknown violation";
}

std::vector<AxiomViolation> check_axioms(
    std::uint64_t size, const std::function<Rational(std::uint64_t, std::uint64_t)>& dist,
    const std::function<bool(std::uint64_t, std::uint64_t)>& equal,
    std::size_t max_violations) {
  std::vector<AxiomViolation> out;
  std::vector<std::vector<Rational>> d(size, std::vector<Rational>(size));
  for (std::uint64_t i = 0; i < size; ++i) {
    for (std::uint64_t j = 0; j < size; ++j) d[i][j] = dist(i, j);
  }
  auto report = [&](AxiomViolation::Kind kind, std::uint64_t i, std::uint64_t j,
                    std::uint64_t k) {
    out.push_back({kind, i, j, k});
    return out.size() >= max_violations;
  };
  for (std::uint64_t i = 0; i < size; ++i) {
    for (std::uint64_t j = 0; j < size; ++j) {
      if (d[i][j].sign() < 0 && report(AxiomViolation::Kind::Negative, i, j, 0)) return out;
      if ((d[i][j].sign() == 0) != equal(i, j) &&
          report(AxiomViolation::Kind::Identity, i, j, 0)) {
        return out;
      }
      if (d[i][j] != d[j][i] && report(AxiomViolation::Kind::Symmetry, i, j, 0)) return out;
    }
  }
  for (std::uint64_t i = 0; i < size; ++i) {
    for (std::uint64_t j = 0; j < size; ++j) {
      for (std::uint64_t k = 0; k < size; ++k) {
        if (d[i][k] > d[i][j] + d[j][k] && report(AxiomViolation::Kind::Triangle, i, j, k)) {
          return out;
        }
      }
    }
  }
  return out;
}

std::vector<AxiomViolation> check_axioms(const RationalMetricTable& table) {
  return check_axioms(
      table.size(), [&table](std::uint64_t i, std::uint64_t j) { return table.dist(i, j); },
      [](std::uint64_t i, std::uint64_t j) { return i == j; });
}

struct SpaceCode::State {
  std::shared_ptr<const RationalMetricTable> table;
  QuadBit bit;
  std::string description;
};

SpaceCode SpaceCode::encode(const RationalMetricTable& table) {
  auto shared = std::make_shared<const RationalMetricTable>(table);
  QuadBit bit = [shared](const Nat& i, const Nat& j, const Nat& m, const Nat& n) {
    if (!fits_u64(i) || !fits_u64(j)) {
      throw PositionOverflow("metric index beyond 64 bits: " + i.get_str() + "," + j.get_str());
    }
    return shared->dist(to_u64(i), to_u64(j)) == Rational(m, n + 1);
  };
  return SpaceCode(std::make_shared<const State>(
      State{shared, std::move(bit), "beta(" + table.tail().descriptor + ")"}));
}

SpaceCode SpaceCode::from_bits(QuadBit bit, std::string description) {
  return SpaceCode(std::make_shared<const State>(State{nullptr, std::move(bit),
                                                       std::move(description)}));
}

bool SpaceCode::quad_bit(const Nat& i, const Nat& j, const Nat& m, const Nat& n) const {
  return state_->bit(i, j, m, n);
}

bool SpaceCode::bit(const Nat& position) const {
  const SeqCode code(position);
  if (lh(code) != 4) return false;
  const Sequence q = decode(code);
  return quad_bit(q[0], q[1], q[2], q[3]);
}

BairePoint SpaceCode::point() const {
  const SpaceCode self = *this;
  return BairePoint::from_rule(
      [self](BairePoint::Position n) -> Nat { return self.bit(nat_from_u64(n)) ? 1 : 0; },
      state_->description);
}

const RationalMetricTable* SpaceCode::table() const { return state_->table.get(); }

const std::string& SpaceCode::description() const { return state_->description; }

Rational decode_metric(const SpaceCode& code, std::uint64_t i, std::uint64_t j,
                       std::uint64_t window) {
  const Nat ni = nat_from_u64(i);
  const Nat nj = nat_from_u64(j);
  std::optional<Rational> found;
  for (std::uint64_t w = 0; w <= window; ++w) {
    for (std::uint64_t m = 0; m <= w; ++m) {
      const std::uint64_t n = w - m;
      if (!code.quad_bit(ni, nj, nat_from_u64(m), nat_from_u64(n))) continue;
      const Rational value(nat_from_u64(m), nat_from_u64(n) + 1);
      if (!found) {
        found = value;
      } else if (*found != value) {
        throw MalformedCode("pair (" + std::to_string(i) + "," + std::to_string(j) +
                            ") carries both " + found->str() + " and " + value.str());
      }
    }
  }
  if (!found) {
    throw MalformedCode("no value for pair (" + std::to_string(i) + "," + std::to_string(j) +
                        ") with m + n <= " + std::to_string(window));
  }
  return *found;
}

CompletionPoint CompletionPoint::constant(std::uint64_t index) {
  return CompletionPoint{[index](std::uint64_t) { return index; }};
}

CompletionPoint CompletionPoint::from_terms(std::vector<std::uint64_t> terms) {
  if (terms.empty()) throw std::invalid_argument("a completion point needs at least one term");
  return CompletionPoint{[terms = std::move(terms)](std::uint64_t r) {
    return r < terms.size() ? terms[r] : terms.back();
  }};
}

void certify_cauchy(const RationalMetricTable& table, const CompletionPoint& p,
                    std::uint64_t r) {
  for (std::uint64_t s = 0; s < r; ++s) {
    const Rational step = table.dist(p.term(s), p.term(s + 1));
    if (step > Rational::pow2_inverse(s)) {
      throw CauchyRateViolation("d(k_" + std::to_string(s) + ", k_" + std::to_string(s + 1) +
                                ") = " + step.str() + " exceeds 2^-" + std::to_string(s) +
                                " (r = " + std::to_string(s) + ")");
    }
  }
}

Interval completion_distance(const RationalMetricTable& table, const CompletionPoint& p,
                             const CompletionPoint& q, std::uint64_t precision) {
  const std::uint64_t r = precision + 2;
  certify_cauchy(table, p, r);
  certify_cauchy(table, q, r);
  const Rational d = table.dist(p.term(r), q.term(r));
  const Rational slack = Rational::pow2_inverse(r - 1);
  return Interval{d - slack, d + slack};
}

struct DenseEnumeration::State {
  State(DensePointFamily f, std::uint64_t limit) : family(std::move(f)), scan_limit(limit) {}

  DensePointFamily family;
  std::uint64_t scan_limit;
  std::mutex mutex;
  std::vector<SeqCode> codes;
  std::uint64_t next = 0;
};

DenseEnumeration::DenseEnumeration(DensePointFamily family, std::uint64_t scan_limit)
    : state_(std::make_shared<State>(std::move(family), scan_limit)) {}

SeqCode DenseEnumeration::code(std::uint64_t i) const {
  std::lock_guard lock(state_->mutex);
  while (state_->codes.size() <= i) {
    if (state_->next >= state_->scan_limit) {
      throw InsufficientDensePoints(
          "only " + std::to_string(state_->codes.size()) + " distinct dense points of " +
          state_->family.tree().description() + " below code " +
          std::to_string(state_->scan_limit) + ", needed " + std::to_string(i + 1));
    }
    const SeqCode s(state_->next++);
    if (!state_->family.admissible(s)) continue;
    bool fresh = true;
    for (const SeqCode& t : state_->codes) {
      if (state_->family.equal(s, t)) {
        fresh = false;
        break;
      }
    }
    if (fresh) state_->codes.push_back(s);
  }
  return state_->codes[i];
}

std::vector<SeqCode> DenseEnumeration::first(std::uint64_t count) const {
  std::vector<SeqCode> out;
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(code(i));
  return out;
}

const DensePointFamily& DenseEnumeration::family() const { return state_->family; }

InterleavedTable interleave(const DensePointFamily& fam_a, const DensePointFamily& fam_ac,
                            std::uint64_t size, std::uint64_t scan_limit) {
  const DenseEnumeration side_a(fam_a, scan_limit);
  const DenseEnumeration side_ac(fam_ac, scan_limit);
  std::vector<SeqCode> codes_a = side_a.first((size + 1) / 2);
  std::vector<SeqCode> codes_ac = side_ac.first(size / 2);
  auto dist = [side_a, side_ac](std::uint64_t i, std::uint64_t j) {
    if (i % 2 != j % 2) return Rational(2);
    const DenseEnumeration& side = i % 2 == 0 ? side_a : side_ac;
    return side.family().distance(side.code(i / 2), side.code(j / 2));
  };
  RationalMetricTable table = tabulate(
      size,
      "interleave(" + fam_a.tree().description() + " | " + fam_ac.tree().description() + ")",
      dist);
  return InterleavedTable{std::move(table), std::move(codes_a), std::move(codes_ac)};
}

CodeFile CodeFile::from_table(std::string instance_id, const RationalMetricTable& table) {
  CodeFile file;
  file.instance_id = std::move(instance_id);
  file.size = table.size();
  file.rows.assign(file.size, std::vector<Rational>(file.size));
  for (std::uint64_t i = 0; i < file.size; ++i) {
    for (std::uint64_t j = 0; j < file.size; ++j) file.rows[i][j] = table.dist(i, j);
  }
  file.tail = table.tail().descriptor;
  return file;
}

void CodeFile::write(std::ostream& os) const {
  os << "remetrize-code " << kCodeFormatVersion << "\n";
  os << "instance " << instance_id << "\n";
  os << "size " << size << "\n";
  for (std::uint64_t i = 0; i < size; ++i) {
    for (std::uint64_t j = i; j < size; ++j) {
      os << i << " " << j << " " << rows[i][j].str() << "\n";
    }
  }
  for (const std::string& line : annotations) os << line << "\n";
  os << "tail " << tail << "\n";
}

namespace {

std::string expect_keyword(std::istream& is, std::size_t& line_no, const std::string& keyword) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError(line_no + 1, 1, "missing '" + keyword + "' line");
  ++line_no;
  if (line.rfind(keyword + " ", 0) != 0) {
    throw ParseError(line_no, 1, "expected '" + keyword + "'");
  }
  return line.substr(keyword.size() + 1);
}

}  // namespace

CodeFile CodeFile::parse(std::istream& is) {
  CodeFile file;
  std::size_t line_no = 0;
  const std::string version = expect_keyword(is, line_no, "remetrize-code");
  if (version != std::to_string(kCodeFormatVersion)) {
    throw ParseError(line_no, 16, "unsupported code format version " + version);
  }
  file.instance_id = expect_keyword(is, line_no, "instance");
  const std::string size_text = expect_keyword(is, line_no, "size");
  try {
    file.size = std::stoull(size_text);
  } catch (const std::exception&) {
    throw ParseError(line_no, 6, "bad size '" + size_text + "'");
  }
  file.rows.assign(file.size, std::vector<Rational>(file.size));
  std::string line;
  for (std::uint64_t i = 0; i < file.size; ++i) {
    for (std::uint64_t j = i; j < file.size; ++j) {
      if (!std::getline(is, line)) throw ParseError(line_no + 1, 1, "table ends early");
      ++line_no;
      std::istringstream fields(line);
      std::uint64_t a = 0, b = 0;
      std::string value;
      if (!(fields >> a >> b >> value) || a != i || b != j) {
        throw ParseError(line_no, 1,
                         "expected entry " + std::to_string(i) + " " + std::to_string(j));
      }
      try {
        file.rows[i][j] = file.rows[j][i] = Rational::parse(value);
      } catch (const std::exception& e) {
        throw ParseError(line_no, line.find(value) + 1, e.what());
      }
    }
  }
  while (std::getline(is, line)) {
    ++line_no;
    if (line.rfind("tail ", 0) == 0) {
      file.tail = line.substr(5);
      if (std::getline(is, line)) throw ParseError(line_no + 1, 1, "content after tail line");
      return file;
    }
    file.annotations.push_back(line);
  }
  throw ParseError(line_no + 1, 1, "missing 'tail' line");
}

PipelineResult run_pipeline(const std::vector<PipelineInstance>& batch) {
  PipelineResult result;
  for (const PipelineInstance& instance : batch) {
    try {
      auto [fam_a, fam_ac] = instance.families();
      const InterleavedTable interleaved = interleave(fam_a, fam_ac, instance.size);
      result.codes.emplace(instance.id, SpaceCode::encode(interleaved.table));
      result.files.emplace(instance.id, CodeFile::from_table(instance.id, interleaved.table));
    } catch (const Error& e) {
      result.errors[instance.id] = std::string(e.kind()) + ": " + e.what();
    } catch (const std::exception& e) {
      result.errors[instance.id] = std::string("Error: ") + e.what();
    }
  }
  return result;
}

}  // namespace remetrize
