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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "remetrize/rational.hpp"

namespace remetrize {

/// A finite sequence of naturals in decoded form.
using Sequence = std::vector<Nat>;

/// Decoding refuses sequences longer than this; every natural still has a
/// well-defined length via lh().
inline constexpr std::uint64_t kMaxDecodedLength = std::uint64_t{1} << 22;

/// C(a, b) = (a + b)(a + b + 1)/2 + a, a bijection N x N -> N.
Nat cantor_pair(const Nat& a, const Nat& b);
std::pair<Nat, Nat> cantor_unpair(const Nat& z);

/// Code of a finite sequence under the length-tagged iterated Cantor
/// pairing:
///
///   <>            = 0
///   <u0 ... un-1> = 1 + C(n - 1, C(u0, C(u1, ... C(un-2, un-1) ...)))
///
/// The scheme is a bijection between finite sequences and N, so every
/// natural is the code of exactly one sequence. Codes are a wire format and
/// must never change.
class SeqCode {
 public:
  SeqCode() = default;
  explicit SeqCode(Nat value) : value_(std::move(value)) {}
  explicit SeqCode(std::uint64_t value) : value_(nat_from_u64(value)) {}

  const Nat& value() const { return value_; }
  std::string str() const { return value_.get_str(); }

  friend bool operator==(const SeqCode& a, const SeqCode& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const SeqCode& a, const SeqCode& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  Nat value_;
};

struct SeqCodeHash {
  std::size_t operator()(const SeqCode& s) const { return hash_value(s.value()); }
};

SeqCode encode(std::span<const Nat> u);
SeqCode encode(std::initializer_list<std::uint64_t> u);
Sequence decode(const SeqCode& s);

Nat lh(const SeqCode& s);
/// (s)_i; zero when i >= lh(s).
Nat proj(const SeqCode& s, std::uint64_t i);
/// s ^ k: the code of s extended by k.
SeqCode append(const SeqCode& s, const Nat& k);
/// s is an initial segment of t (on decoded sequences).
bool is_prefix(const SeqCode& s, const SeqCode& t);
bool is_prefix(std::span<const Nat> u, std::span<const Nat> v);
/// Code of the first n entries of s (n clamped to lh(s)).
SeqCode restrict_to(const SeqCode& s, std::uint64_t n);

/// q_s = (-1)^{(s)_0} (s)_1 / ((s)_2 + 1).
Rational rational_of_index(const Nat& s);
/// The canonical index <sign, |p|, q - 1> of a rational p/q in lowest terms;
/// rational_of_index(index_of_rational(r)) == r.
Nat index_of_rational(const Rational& r);

/// Position <i, n> used to interleave sequences of Baire points.
Nat pair_position(const Nat& i, const Nat& n);
/// Position <i, j, m, n> used by metric codes.
Nat quad_position(const Nat& i, const Nat& j, const Nat& m, const Nat& n);

std::string to_string(std::span<const Nat> u);

}  // namespace remetrize
