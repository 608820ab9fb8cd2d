// Copyright 2026 The VulnLens Authors
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

#include <gtest/gtest.h>

#include <algorithm>

#include "support/program_gen.h"
#include "vulnlens/minic/parser.h"
#include "vulnlens/transforms/transforms.h"

namespace vulnlens::transforms {
namespace {

using minic::ParseSource;

bool HasSite(const std::vector<Site>& sites, Op op) {
  return std::any_of(sites.begin(), sites.end(), [op](const Site& s) {
    return std::find(s.applicable_ops.begin(), s.applicable_ops.end(), op) !=
           s.applicable_ops.end();
  });
}

TEST(FindSitesTest, ReturnOnlyFunctionHasRenameSiteOnly) {
  const auto sites = FindSites(ParseSource("int f(){return 0;}"));
  ASSERT_EQ(1u, sites.size());
  EXPECT_TRUE(sites[0].path.empty());
  EXPECT_EQ(std::vector<Op>{Op::kFunctionRename}, sites[0].applicable_ops);
}

TEST(FindSitesTest, IfElseOnRelationalCondition) {
  const auto sites =
      FindSites(ParseSource("int f(int a, int b){ int x; if (a<b) {x=1;} else {x=2;} return x; }"));
  EXPECT_TRUE(HasSite(sites, Op::kOperandSwap));
  EXPECT_TRUE(HasSite(sites, Op::kBlockSwap));
  EXPECT_TRUE(HasSite(sites, Op::kVariableRename));
}

TEST(FindSitesTest, FallthroughSwitchHasNoSwitchSite) {
  const auto with_fallthrough = FindSites(ParseSource(
      "int f(int x){ switch (x) { case 1: x = 2; case 2: x = 3; break; } return x; }"));
  EXPECT_FALSE(HasSite(with_fallthrough, Op::kSwitchToIf));
  const auto without = FindSites(ParseSource(
      "int f(int x){ switch (x) { case 1: x = 2; break; case 2: x = 3; break; } return x; }"));
  EXPECT_TRUE(HasSite(without, Op::kSwitchToIf));
}

TEST(FindSitesTest, StatementSwapNeedsIndependence) {
  EXPECT_TRUE(HasSite(FindSites(ParseSource("int f(){ int a=1; int b=2; return 0; }")),
                      Op::kStatementSwap));
  EXPECT_FALSE(HasSite(FindSites(ParseSource("int f(){ int a=1; int b=a; return 0; }")),
                       Op::kStatementSwap));
}

TEST(FindSitesTest, PreOrderAndDeterministic) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const minic::Function fn = testing::RandomProgram(seed);
    const auto a = FindSites(fn);
    const auto b = FindSites(fn);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].path, b[i].path);
      EXPECT_EQ(a[i].applicable_ops, b[i].applicable_ops);
      if (i > 0) {
        EXPECT_TRUE(std::lexicographical_compare(a[i - 1].path.begin(), a[i - 1].path.end(),
                                                 a[i].path.begin(), a[i].path.end()))
            << "sites out of pre-order at seed " << seed;
      }
    }
  }
}

}  // namespace
}  // namespace vulnlens::transforms
