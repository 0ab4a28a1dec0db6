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

#include "remetrize/coding.hpp"

#include <algorithm>
#include <sstream>

#include "remetrize/errors.hpp"

namespace remetrize {

Nat cantor_pair(const Nat& a, const Nat& b) {
  Nat w = a + b;
  Nat t = w * (w + 1);
  t >>= 1;
  return t + a;
}

std::pair<Nat, Nat> cantor_unpair(const Nat& z) {
  // w = floor((sqrt(8z + 1) - 1) / 2), the diagonal index.
  Nat disc = 8 * z + 1;
  Nat root;
  mpz_sqrt(root.get_mpz_t(), disc.get_mpz_t());
  Nat w = (root - 1) / 2;
  Nat t = w * (w + 1);
  t >>= 1;
  Nat a = z - t;
  Nat b = w - a;
  return {std::move(a), std::move(b)};
}

SeqCode encode(std::span<const Nat> u) {
  if (u.empty()) {
    return SeqCode{};
  }
  Nat fold = u.back();
  for (std::size_t i = u.size() - 1; i-- > 0;) {
    fold = cantor_pair(u[i], fold);
  }
  return SeqCode(1 + cantor_pair(nat_from_u64(u.size() - 1), fold));
}

SeqCode encode(std::initializer_list<std::uint64_t> u) {
  Sequence seq;
  seq.reserve(u.size());
  for (auto v : u) seq.push_back(nat_from_u64(v));
  return encode(seq);
}

namespace {

// (n, fold) for a nonzero code.
std::pair<Nat, Nat> split_code(const SeqCode& s) {
  auto [tag, fold] = cantor_unpair(s.value() - 1);
  return {tag + 1, std::move(fold)};
}

}  // namespace

Sequence decode(const SeqCode& s) {
  if (s.value() == 0) {
    return {};
  }
  auto [n, fold] = split_code(s);
  if (!fits_u64(n) || to_u64(n) > kMaxDecodedLength) {
    throw SequenceTooLong("code " + s.str() + " has length " + n.get_str());
  }
  const std::uint64_t len = to_u64(n);
  Sequence out;
  out.reserve(len);
  for (std::uint64_t i = 0; i + 1 < len; ++i) {
    auto [head, rest] = cantor_unpair(fold);
    out.push_back(std::move(head));
    fold = std::move(rest);
  }
  out.push_back(std::move(fold));
  return out;
}

Nat lh(const SeqCode& s) {
  if (s.value() == 0) return 0;
  return split_code(s).first;
}

Nat proj(const SeqCode& s, std::uint64_t i) {
  if (s.value() == 0) return 0;
  auto [n, fold] = split_code(s);
  if (nat_from_u64(i) >= n) return 0;
  const bool last = nat_from_u64(i) + 1 == n;
  for (std::uint64_t k = 0; k < i; ++k) {
    fold = cantor_unpair(fold).second;
  }
  return last ? fold : cantor_unpair(fold).first;
}

SeqCode append(const SeqCode& s, const Nat& k) {
  Sequence u = decode(s);
  u.push_back(k);
  return encode(u);
}

bool is_prefix(std::span<const Nat> u, std::span<const Nat> v) {
  return u.size() <= v.size() && std::equal(u.begin(), u.end(), v.begin());
}

bool is_prefix(const SeqCode& s, const SeqCode& t) {
  if (s.value() == 0) return true;
  if (lh(s) > lh(t)) return false;
  return is_prefix(decode(s), decode(t));
}

SeqCode restrict_to(const SeqCode& s, std::uint64_t n) {
  Sequence u = decode(s);
  if (u.size() > n) u.resize(n);
  return encode(u);
}

Rational rational_of_index(const Nat& s) {
  SeqCode code(s);
  Nat sign = proj(code, 0);
  Nat num = proj(code, 1);
  Nat den = proj(code, 2) + 1;
  if (mpz_odd_p(sign.get_mpz_t())) num = -num;
  return Rational(num, den);
}

Nat index_of_rational(const Rational& r) {
  Nat sign = r.sign() < 0 ? 1 : 0;
  Nat num = abs(r.numerator());
  Nat den = r.denominator() - 1;
  Sequence u{sign, num, den};
  return encode(u).value();
}

Nat pair_position(const Nat& i, const Nat& n) {
  Sequence u{i, n};
  return encode(u).value();
}

Nat quad_position(const Nat& i, const Nat& j, const Nat& m, const Nat& n) {
  Sequence u{i, j, m, n};
  return encode(u).value();
}

std::string to_string(std::span<const Nat> u) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i) os << ',';
    os << u[i].get_str();
  }
  os << ']';
  return os.str();
}

}  // namespace remetrize
