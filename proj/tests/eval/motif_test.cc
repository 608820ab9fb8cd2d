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

#include "vulnlens/eval/motif.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "vulnlens/common/error.h"

namespace vulnlens::eval {
namespace {

TEST(MotifTest, BalancedAndDeterministic) {
  const auto a = GenerateMotifGraphs(100, 3);
  const auto b = GenerateMotifGraphs(100, 3);
  int positives = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    positives += a[i].label;
    EXPECT_EQ(a[i].graph.features.data(), b[i].graph.features.data());
    EXPECT_EQ(a[i].graph.edges.size(), b[i].graph.edges.size());
  }
  EXPECT_NEAR(50, positives, 10);
}

TEST(MotifTest, MotifOnlyInPositiveGraphs) {
  const MotifSpec spec;
  for (const auto& m : GenerateMotifGraphs(60, 4, spec)) {
    ASSERT_EQ(static_cast<std::size_t>(spec.motif_nodes), m.marked_nodes.size());
    const std::set<int> marked(m.marked_nodes.begin(), m.marked_nodes.end());
    int between_marked = 0;
    for (const auto& e : m.graph.edges) {
      between_marked += marked.count(e.src) && marked.count(e.dst);
    }
    if (m.label == 0) {
      EXPECT_EQ(0, between_marked);
      EXPECT_TRUE(m.motif.empty());
    } else {
      EXPECT_EQ(spec.motif_nodes, between_marked);
      EXPECT_EQ(static_cast<std::size_t>(spec.motif_nodes), m.motif.size());
    }
    EXPECT_GE(m.graph.num_nodes(), spec.min_nodes);
    EXPECT_LE(m.graph.num_nodes(), spec.max_nodes);
    EXPECT_EQ(m.label, m.graph.label.value_or(-1));
  }
}

TEST(MotifTest, EdgeIou) {
  using codegraph::Edge;
  using codegraph::EdgeType;
  const std::vector<Edge> a = {{0, 1, EdgeType::kData}, {1, 2, EdgeType::kData}};
  const std::vector<Edge> b = {{1, 2, EdgeType::kData}, {2, 3, EdgeType::kData}};
  EXPECT_DOUBLE_EQ(1.0 / 3.0, EdgeIou(a, b));
  EXPECT_DOUBLE_EQ(1.0, EdgeIou(a, a));
  EXPECT_DOUBLE_EQ(1.0, EdgeIou({}, {}));
  EXPECT_DOUBLE_EQ(0.0, EdgeIou(a, {}));
}

TEST(MotifTest, Validation) {
  MotifSpec spec;
  spec.motif_nodes = 2;
  EXPECT_THROW(spec.Validate(), ConfigError);
  spec = {};
  spec.min_nodes = 8;
  EXPECT_THROW(spec.Validate(), ConfigError);
}

}  // namespace
}  // namespace vulnlens::eval
