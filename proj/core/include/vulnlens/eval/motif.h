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

#pragma once

#include <cstdint>
#include <vector>

#include "vulnlens/codegraph/graph.h"

namespace vulnlens::eval {

struct MotifSpec {
  int min_nodes = 20;
  int max_nodes = 50;
  // Nodes carrying the distinctive feature; the motif is a directed cycle
  // through them with this many edges.
  int motif_nodes = 5;
  // Random extra edges per node, on top of the sequential chain.
  double extra_edge_rate = 0.5;
  int feature_dim = 16;

  // Throws ConfigError.
  void Validate() const;
};

struct MotifGraph {
  codegraph::CodeGraph graph;  // graph.label is set
  int label = 0;
  // Planted edges (label 1) or empty (label 0).
  std::vector<codegraph::Edge> motif;
  // Nodes carrying the distinctive feature, in either class.
  std::vector<int> marked_nodes;
};

// Alternating labels, deterministic in (n, seed, spec). Every graph has the
// same number of marked nodes; only label-1 graphs connect any two of them,
// and then exactly by the motif's DATA edges. Node i sits on source line
// i + 1. Throws ConfigError for n < 10.
std::vector<MotifGraph> GenerateMotifGraphs(int n, std::uint64_t seed, const MotifSpec& spec = {});

// Edge-set intersection over union; 1 when both are empty.
double EdgeIou(const std::vector<codegraph::Edge>& a, const std::vector<codegraph::Edge>& b);

}  // namespace vulnlens::eval
