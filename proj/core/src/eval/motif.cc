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

#include <algorithm>
#include <set>

#include "vulnlens/common/error.h"
#include "vulnlens/common/rng.h"

namespace vulnlens::eval {

using codegraph::Edge;
using codegraph::EdgeType;

void MotifSpec::Validate() const {
  if (motif_nodes < 3) throw ConfigError("motif needs at least 3 nodes");
  if (min_nodes < 2 * motif_nodes || max_nodes < min_nodes) {
    throw ConfigError("graph size range too small for the motif");
  }
  if (feature_dim < 4) throw ConfigError("feature_dim must be at least 4");
  if (extra_edge_rate < 0.0) throw ConfigError("extra_edge_rate must be non-negative");
}

namespace {

MotifGraph MakeGraph(Rng& rng, const MotifSpec& spec, int label) {
  const int v = static_cast<int>(rng.UniformInt(spec.min_nodes, spec.max_nodes));
  // Marked nodes are never neighbours on the chain.
  std::vector<int> slots;
  for (int i = 0; i < v; i += 2) slots.push_back(i);
  rng.Shuffle(slots);
  std::vector<int> marked(slots.begin(), slots.begin() + spec.motif_nodes);
  std::sort(marked.begin(), marked.end());
  rng.Shuffle(marked);  // cycle order
  const std::set<int> is_marked(marked.begin(), marked.end());

  std::vector<codegraph::NodeInfo> nodes(static_cast<std::size_t>(v));
  tensor::Tensor features(v, spec.feature_dim);
  for (int i = 0; i < v; ++i) {
    nodes[i].stmt_id = i;
    nodes[i].span = {i + 1, 1, i + 1, 2};
    nodes[i].kind = codegraph::StmtKind::kExprStmt;
    if (is_marked.count(i)) {
      nodes[i].tokens = {"marked"};
      features(i, spec.feature_dim - 1) = 1.0;
    } else {
      const int bucket = static_cast<int>(rng.UniformInt(0, spec.feature_dim - 2));
      nodes[i].tokens = {"plain" + std::to_string(bucket)};
      features(i, bucket) = 1.0;
    }
  }

  std::vector<Edge> edges;
  for (int i = 0; i + 1 < v; ++i) edges.push_back({i, i + 1, EdgeType::kNext});
  const int extra = static_cast<int>(spec.extra_edge_rate * v);
  for (int k = 0; k < extra; ++k) {
    const int a = static_cast<int>(rng.UniformInt(0, v - 1));
    const int b = static_cast<int>(rng.UniformInt(0, v - 1));
    if (a == b || (is_marked.count(a) && is_marked.count(b))) continue;
    edges.push_back({a, b, rng.Bernoulli(0.5) ? EdgeType::kCtrl : EdgeType::kData});
  }
  MotifGraph out;
  out.label = label;
  out.marked_nodes = std::vector<int>(marked.begin(), marked.end());
  std::sort(out.marked_nodes.begin(), out.marked_nodes.end());
  if (label == 1) {
    for (std::size_t k = 0; k < marked.size(); ++k) {
      out.motif.push_back({marked[k], marked[(k + 1) % marked.size()], EdgeType::kData});
    }
    edges.insert(edges.end(), out.motif.begin(), out.motif.end());
    std::sort(out.motif.begin(), out.motif.end());
  }
  out.graph = codegraph::MakeGraph(std::move(nodes), std::move(edges), label, std::move(features));
  return out;
}

}  // namespace

std::vector<MotifGraph> GenerateMotifGraphs(int n, std::uint64_t seed, const MotifSpec& spec) {
  if (n < 10) throw ConfigError("motif benchmark needs at least 10 graphs");
  spec.Validate();
  Rng rng(DeriveSeed(seed, "motif"));
  std::vector<MotifGraph> graphs;
  graphs.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) graphs.push_back(MakeGraph(rng, spec, k % 2));
  return graphs;
}

double EdgeIou(const std::vector<Edge>& a, const std::vector<Edge>& b) {
  const std::set<Edge> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  if (sa.empty() && sb.empty()) return 1.0;
  int common = 0;
  for (const Edge& e : sa) common += sb.count(e) ? 1 : 0;
  return static_cast<double>(common) / static_cast<double>(sa.size() + sb.size() - common);
}

}  // namespace vulnlens::eval
