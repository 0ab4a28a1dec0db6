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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "remetrize/catalog.hpp"

namespace remetrize {
namespace {

BuiltInstance load(const std::string& name) {
  std::ifstream in(std::filesystem::path(REMETRIZE_INSTANCE_DIR) / (name + ".json"));
  std::ostringstream text;
  text << in.rdbuf();
  return build_instance(parse_instance(text.str()));
}

const CheckResult* find_check(const Report& r, const std::string& name) {
  for (const auto& c : r.checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

TEST(Verify, RandomBranchesStayInTheTree) {
  const DensePointFamily fam(no_repeat_tree());
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const Sequence p = random_branch(fam, rng, 40).prefix(60);
    for (std::size_t n = 0; n <= p.size(); ++n) EXPECT_TRUE(fam.tree().node(std::span<const Nat>(p).first(n)));
  }
  const Sequence start{2, 0};
  EXPECT_EQ(random_branch(fam, rng, 10, start).prefix(2), start);
}

TEST(Verify, TreeCheckNamesTheViolation) {
  const PrunedTree bad = explicit_tree({{}, {0}, {0, 0}, {0, 1}, {1, 1}}, 2, cantor_tree());
  const CheckResult r = check_tree("tree.bad", bad, 4);
  EXPECT_FALSE(r.ok());
  ASSERT_FALSE(r.failures.empty());
  EXPECT_EQ(r.failures.front().rfind("DownwardClosureViolation", 0), 0U);
  EXPECT_TRUE(check_tree("tree.cantor", cantor_tree(), 4).ok());
}

TEST(Verify, CatalogInstancePasses) {
  const Report r = verify_instance(load("cantor-cylinder"), VerifyOptions{});
  EXPECT_TRUE(r.ok()) << r.render(true);
  for (const std::string name : {"tree.ambient", "metric-axioms", "clopen", "epsilon", "extension", "codes", "luzin"}) {
    EXPECT_NE(find_check(r, name), nullptr) << name;
  }
}

TEST(Verify, CorruptedTreeFails) {
  const Report r = verify_instance(load("corrupted-tree"), VerifyOptions{});
  EXPECT_FALSE(r.ok());
  const std::string text = r.render(false);
  EXPECT_NE(text.find("failure tree.A DownwardClosureViolation"), std::string::npos) << text;
  EXPECT_NE(text.find("result FAIL"), std::string::npos);
}

TEST(Verify, ReportsAreDeterministicAndExact) {
  const BuiltInstance inst = load("baire-closed-split");
  VerifyOptions options;
  options.seed = 17;
  const std::string first = verify_instance(inst, options).render(true);
  const std::string second = verify_instance(load("baire-closed-split"), options).render(true);
  EXPECT_EQ(first, second);
  EXPECT_EQ(first.rfind("remetrize-report 1\ninstance baire-closed-split\nseed 17\n", 0), 0U);
  // No decimal points or exponents anywhere: numbers are integers or p/q.
  EXPECT_FALSE(std::regex_search(first, std::regex("[0-9]\\.[0-9]|[0-9]e[-+]?[0-9]")));
}

TEST(Verify, DegenerateInstanceSkipsSumChecks) {
  const Report r = verify_instance(load("cantor-empty"), VerifyOptions{});
  EXPECT_TRUE(r.ok()) << r.render(true);
}

}  // namespace
}  // namespace remetrize
