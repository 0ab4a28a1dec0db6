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
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "remetrize/baire.hpp"
#include "remetrize/rational.hpp"
#include "remetrize/tree.hpp"

namespace remetrize {

/// How distances beyond the explicit table are computed.
struct TailRule {
  std::string descriptor;
  std::function<Rational(std::uint64_t, std::uint64_t)> dist;
};

/// A rational-valued metric on the naturals: an explicit table for indices
/// below K and a tail rule for everything else.
class RationalMetricTable {
 public:
  RationalMetricTable(std::vector<std::vector<Rational>> rows, TailRule tail);

  std::uint64_t size() const { return rows_.size(); }
  Rational dist(std::uint64_t i, std::uint64_t j) const;
  const TailRule& tail() const { return tail_; }

 private:
  std::vector<std::vector<Rational>> rows_;
  TailRule tail_;
};

/// Builds the K x K table from a distance function and uses it as the tail.
RationalMetricTable tabulate(std::uint64_t size, std::string descriptor,
                             std::function<Rational(std::uint64_t, std::uint64_t)> dist);

RationalMetricTable discrete_metric_table(std::uint64_t size);

struct AxiomViolation {
  enum class Kind { Negative, Identity, Symmetry, Triangle };
  Kind kind;
  std::uint64_t i = 0, j = 0, k = 0;

  std::string str() const;
};

/// Exhaustive metric-axiom check over indices below `size`. Identity of
/// indiscernibles is relative to `equal`. Stops after `max_violations`.
std::vector<AxiomViolation> check_axioms(
    std::uint64_t size, const std::function<Rational(std::uint64_t, std::uint64_t)>& dist,
    const std::function<bool(std::uint64_t, std::uint64_t)>& equal,
    std::size_t max_violations = 16);
std::vector<AxiomViolation> check_axioms(const RationalMetricTable& table);

/// The 0/1 code beta_d: beta_d(<i,j,m,n>) = 1 iff d(i,j) = m/(n+1).
class SpaceCode {
 public:
  using QuadBit = std::function<bool(const Nat& i, const Nat& j, const Nat& m, const Nat& n)>;

  static SpaceCode encode(const RationalMetricTable& table);
  /// An arbitrary 0/1 assignment on quadruples; for malformed inputs.
  static SpaceCode from_bits(QuadBit bit, std::string description);

  bool quad_bit(const Nat& i, const Nat& j, const Nat& m, const Nat& n) const;
  /// beta_d at an arbitrary position; 0 off quadruple positions.
  bool bit(const Nat& position) const;
  BairePoint point() const;
  /// The table the code was built from, if any.
  const RationalMetricTable* table() const;
  const std::string& description() const;

 private:
  struct State;
  explicit SpaceCode(std::shared_ptr<const State> state) : state_(std::move(state)) {}
  std::shared_ptr<const State> state_;
};

inline constexpr std::uint64_t kDefaultDecodeWindow = 64;

/// The value m/(n+1) of the first 1 among the quadruples for (i, j) in
/// diagonal order (m + n increasing, then m increasing). The rest of the
/// window is scanned for inconsistent 1-bits.
Rational decode_metric(const SpaceCode& code, std::uint64_t i, std::uint64_t j,
                       std::uint64_t window = kDefaultDecodeWindow);

/// A fast Cauchy sequence of indices: d(k_r, k_{r+1}) <= 2^{-r}.
struct CompletionPoint {
  std::function<std::uint64_t(std::uint64_t)> term;

  static CompletionPoint constant(std::uint64_t index);
  static CompletionPoint from_terms(std::vector<std::uint64_t> terms);  // last term repeats
};

struct Interval {
  Rational lo;
  Rational hi;

  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  Rational width() const { return hi - lo; }
};

/// Certifies the Cauchy rate of p up to r; throws CauchyRateViolation.
void certify_cauchy(const RationalMetricTable& table, const CompletionPoint& p, std::uint64_t r);

/// An interval of width 2^{-precision} around the completed distance,
/// evaluated at r = precision + 2.
Interval completion_distance(const RationalMetricTable& table, const CompletionPoint& p,
                             const CompletionPoint& q, std::uint64_t precision);

/// Distinct admissible codes of a family in increasing order, extended on
/// demand up to a scan limit.
class DenseEnumeration {
 public:
  DenseEnumeration(DensePointFamily family, std::uint64_t scan_limit);

  /// The i-th distinct code; throws InsufficientDensePoints past the limit.
  SeqCode code(std::uint64_t i) const;
  std::vector<SeqCode> first(std::uint64_t count) const;
  const DensePointFamily& family() const;

 private:
  struct State;
  std::shared_ptr<State> state_;
};

struct InterleavedTable {
  RationalMetricTable table;
  std::vector<SeqCode> codes_a;   // index 2i  <-> codes_a[i]
  std::vector<SeqCode> codes_ac;  // index 2i+1 <-> codes_ac[i]
};

inline constexpr std::uint64_t kDefaultScanLimit = 1U << 17;

/// Evens from side A, odds from the complement, distance 2 across sides.
InterleavedTable interleave(const DensePointFamily& fam_a, const DensePointFamily& fam_ac,
                            std::uint64_t size, std::uint64_t scan_limit = kDefaultScanLimit);

/// Text carrier of a code: the reduced table below K, optional annotation
/// lines, and the tail descriptor.
struct CodeFile {
  std::string instance_id;
  std::uint64_t size = 0;
  std::vector<std::vector<Rational>> rows;  // full K x K
  std::vector<std::string> annotations;     // "key value..." lines
  std::string tail;

  static CodeFile from_table(std::string instance_id, const RationalMetricTable& table);
  void write(std::ostream& os) const;
  static CodeFile parse(std::istream& is);

  friend bool operator==(const CodeFile&, const CodeFile&) = default;
};

inline constexpr int kCodeFormatVersion = 1;

struct PipelineInstance {
  std::string id;
  /// Builds both families; may throw, which is reported for this id only.
  std::function<std::pair<DensePointFamily, DensePointFamily>()> families;
  std::uint64_t size = 32;
};

struct PipelineResult {
  std::map<std::string, SpaceCode> codes;
  std::map<std::string, CodeFile> files;
  std::map<std::string, std::string> errors;
};

/// Interleave and encode every instance independently.
PipelineResult run_pipeline(const std::vector<PipelineInstance>& batch);

}  // namespace remetrize
