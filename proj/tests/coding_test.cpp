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

#include <gtest/gtest.h>

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "remetrize/errors.hpp"

namespace remetrize {
namespace {

Sequence seq(std::initializer_list<std::uint64_t> values) {
  Sequence out;
  for (auto v : values) out.push_back(nat_from_u64(v));
  return out;
}

// Walks the diagonals x + y = 0, 1, 2, ... in order of increasing x, which is
// the enumeration the pairing function is supposed to number.
std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> diagonal_walk(std::uint64_t diagonals) {
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> out;
  std::uint64_t counter = 0;
  for (std::uint64_t w = 0; w < diagonals; ++w) {
    for (std::uint64_t x = 0; x <= w; ++x) out[{x, w - x}] = counter++;
  }
  return out;
}

// The length-tagged code computed with machine integers, for short sequences
// of small entries only.
std::uint64_t oracle_encode(const std::vector<std::uint64_t>& u,
                            const std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t>& walk) {
  if (u.empty()) return 0;
  std::uint64_t fold = u.back();
  for (std::size_t i = u.size() - 1; i-- > 0;) fold = walk.at({u[i], fold});
  return 1 + walk.at({u.size() - 1, fold});
}

TEST(Coding, PairingMatchesDiagonalWalk) {
  for (const auto& [xy, n] : diagonal_walk(60)) {
    const Nat z = cantor_pair(nat_from_u64(xy.first), nat_from_u64(xy.second));
    EXPECT_EQ(z, nat_from_u64(n));
    auto [x, y] = cantor_unpair(z);
    EXPECT_EQ(x, nat_from_u64(xy.first));
    EXPECT_EQ(y, nat_from_u64(xy.second));
  }
}

TEST(Coding, EncodeMatchesMachineOracleOnSmallSequences) {
  const auto walk = diagonal_walk(400);
  const std::vector<std::vector<std::uint64_t>> cases = {
      {}, {0}, {1}, {5}, {0, 0}, {1, 2}, {2, 1}, {3, 0, 1}, {0, 0, 0}, {1, 1, 1, 1}};
  for (const auto& u : cases) {
    Sequence s;
    for (auto v : u) s.push_back(nat_from_u64(v));
    EXPECT_EQ(encode(s).value(), nat_from_u64(oracle_encode(u, walk))) << to_string(s);
  }
}

TEST(Coding, EmptySequenceIsZeroAndSingletonZeroIsOne) {
  EXPECT_EQ(encode(Sequence{}), SeqCode(std::uint64_t{0}));
  EXPECT_EQ(encode({0}), SeqCode(std::uint64_t{1}));
  EXPECT_EQ(decode(encode({1, 2, 3})), seq({1, 2, 3}));
}

TEST(Coding, LengthAndProjection) {
  EXPECT_EQ(lh(SeqCode(std::uint64_t{0})), 0);
  EXPECT_EQ(proj(encode({7, 4}), 1), 4);
  EXPECT_EQ(proj(encode({7}), 5), 0);
  EXPECT_EQ(proj(SeqCode(std::uint64_t{0}), 3), 0);
}

TEST(Coding, EveryCodeDecodes) {
  // Surjectivity: each small natural decodes to a sequence that re-encodes
  // to the same natural.
  for (std::uint64_t n = 0; n < 5000; ++n) {
    const SeqCode s(n);
    EXPECT_EQ(encode(decode(s)), s) << n;
  }
}

TEST(Coding, AppendAndPrefixExhaustiveOnLengthThree) {
  std::vector<Sequence> all{{}};
  for (std::size_t len = 1; len <= 3; ++len) {
    const std::size_t from = all.size();
    for (std::size_t i = 0; i < from; ++i) {
      if (all[i].size() != len - 1) continue;
      for (std::uint64_t k = 0; k <= 3; ++k) {
        Sequence u = all[i];
        u.push_back(nat_from_u64(k));
        all.push_back(u);
      }
    }
  }
  std::vector<SeqCode> codes;
  for (const auto& u : all) codes.push_back(encode(u));
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::uint64_t k = 0; k <= 3; ++k) {
      const SeqCode t = append(codes[i], nat_from_u64(k));
      EXPECT_EQ(lh(t), lh(codes[i]) + 1);
      EXPECT_EQ(proj(t, all[i].size()), nat_from_u64(k));
    }
    for (std::size_t j = 0; j < all.size(); ++j) {
      const bool oracle = all[i].size() <= all[j].size() &&
                          std::equal(all[i].begin(), all[i].end(), all[j].begin());
      EXPECT_EQ(is_prefix(codes[i], codes[j]), oracle);
      // Antisymmetry of the prefix order.
      if (i != j && is_prefix(codes[i], codes[j])) {
        EXPECT_FALSE(is_prefix(codes[j], codes[i]));
      }
    }
  }
}

TEST(Coding, RestrictTo) {
  EXPECT_EQ(restrict_to(encode({4, 5, 6}), 2), encode({4, 5}));
  EXPECT_EQ(restrict_to(encode({4, 5, 6}), 9), encode({4, 5, 6}));
  EXPECT_EQ(restrict_to(encode({4, 5, 6}), 0), SeqCode(std::uint64_t{0}));
}

TEST(Coding, RationalOfIndexFormula) {
  EXPECT_EQ(rational_of_index(encode({0, 1, 1}).value()), Rational(1, 2));
  EXPECT_EQ(rational_of_index(encode({1, 1, 0}).value()), Rational(-1));
  EXPECT_EQ(rational_of_index(encode({0, 0, 5}).value()), Rational(0));
}

TEST(Coding, RationalOfIndexHitsEveryRational) {
  for (long p = -20; p <= 20; ++p) {
    for (long q = 1; q <= 20; ++q) {
      const Rational r(p, q);
      EXPECT_EQ(rational_of_index(index_of_rational(r)), r) << r;
    }
  }
}

TEST(Coding, QuadAndPairPositionsAreInjective) {
  std::map<Nat, int> seen_pairs;
  for (std::uint64_t i = 0; i < 20; ++i) {
    for (std::uint64_t n = 0; n < 20; ++n) {
      EXPECT_EQ(seen_pairs[pair_position(nat_from_u64(i), nat_from_u64(n))]++, 0);
    }
  }
  std::map<Nat, int> seen_quads;
  for (std::uint64_t i = 0; i < 5; ++i)
    for (std::uint64_t j = 0; j < 5; ++j)
      for (std::uint64_t m = 0; m < 5; ++m)
        for (std::uint64_t n = 0; n < 5; ++n)
          EXPECT_EQ(seen_quads[quad_position(nat_from_u64(i), nat_from_u64(j), nat_from_u64(m),
                                             nat_from_u64(n))]++,
                    0);
}

TEST(Coding, HugeLengthTagIsRejected) {
  // A code whose length tag is far beyond the decode ceiling.
  const SeqCode s(1 + cantor_pair(Nat(1) << 40, 0));
  EXPECT_THROW(decode(s), SequenceTooLong);
}

}  // namespace
}  // namespace remetrize
