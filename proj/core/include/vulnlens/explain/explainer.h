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
#include <optional>
#include <string_view>
#include <vector>

#include "vulnlens/codegraph/graph.h"
#include "vulnlens/nn/model.h"
#include "vulnlens/tensor/tape.h"
#include "vulnlens/tensor/tensor.h"

namespace vulnlens::explain {

enum class ExplainMode { kDual, kFactualOnly, kCounterfactualOnly };

std::string_view ExplainModeName(ExplainMode mode);
ExplainMode ParseExplainMode(std::string_view name);

struct ExplainerConfig {
  double alpha = 0.5;
  int steps = 500;
  double learning_rate = 0.05;
  double threshold = 0.5;
  ExplainMode mode = ExplainMode::kDual;
  // Multiplies the L1 terms of the objective.
  double sparsity = 1.0;
  // When false only edges are explained and both views keep all features.
  bool mask_features = true;
  // If positive and no statement survives the threshold, report the k
  // highest-scoring statements instead.
  int top_k = 0;
  // Standard deviation of Gaussian noise added to the zero initial logits.
  double init_jitter = 0.0;

  // factual-only forces 1, counterfactual-only forces 0.
  double EffectiveAlpha() const;
  // Throws ConfigError.
  void Validate() const;
};

// Relaxed masks: E x 1 over graph.edges and V x d over node features (empty
// when features are not masked).
struct MaskValues {
  tensor::Tensor edges;
  tensor::Tensor features;
};

// Masks on a tape, already squashed into (0, 1).
struct MaskVars {
  tensor::Var edges;
  std::optional<tensor::Var> features;
};

// Class probabilities of the masked graph and of its complement.
struct ViewProbabilities {
  tensor::Var sub_predicted;       // P(predicted | masked graph)
  tensor::Var sub_runner_up;       // P(other class | masked graph)
  tensor::Var comp_predicted;      // P(predicted | complement)
  tensor::Var comp_runner_up;      // P(other class | complement)
};

ViewProbabilities EvaluateViews(tensor::Tape& tape, const nn::GraphModel& model,
                                const codegraph::CodeGraph& graph, const MaskVars& masks,
                                int predicted);

struct Strengths {
  tensor::Var factual;         // P(predicted | masked graph), in [0, 1]
  tensor::Var counterfactual;  // -P(predicted | complement), in [-1, 0]
};
Strengths ComputeStrengths(const ViewProbabilities& views);

struct DualLosses {
  tensor::Var factual;
  tensor::Var counterfactual;
};
// factual = relu(1/2 - S_f + P(other | masked graph)),
// counterfactual = relu(1/2 - S_c - P(other | complement)).
DualLosses ComputeDualLosses(const ViewProbabilities& views);

// sparsity * (|M|_1 + |F|_1) + alpha * factual + (1 - alpha) * counterfactual.
tensor::Var Objective(tensor::Tape& tape, const nn::GraphModel& model,
                      const codegraph::CodeGraph& graph, const MaskVars& masks,
                      const ExplainerConfig& config, int predicted);

// Objective as a function of the unconstrained mask logits.
tensor::Var ObjectiveFromLogits(tensor::Tape& tape, const nn::GraphModel& model,
                                const codegraph::CodeGraph& graph, tensor::Var edge_logits,
                                std::optional<tensor::Var> feature_logits,
                                const ExplainerConfig& config, int predicted);

struct OptimizeResult {
  MaskValues mask;  // lowest observed objective
  double objective = 0.0;
  double initial_objective = 0.0;
  int predicted = 0;
  std::vector<double> trace;  // objective before each step, then the final value
};

// Adam on the mask logits. Deterministic for a fixed seed.
OptimizeResult Optimize(const nn::GraphModel& model, const codegraph::CodeGraph& graph,
                        const ExplainerConfig& config, std::uint64_t seed);

struct RankedStatement {
  int line = 0;
  double score = 0.0;
};

struct ExplanationReport {
  int predicted = 0;
  std::vector<int> kept_edges;  // indices into graph.edges
  std::vector<int> kept_nodes;
  // Source lines of kept nodes by descending score, ties by line.
  std::vector<RankedStatement> statements;
  // Per-node importance: max of incident edge masks and the feature-mask row.
  std::vector<double> node_scores;
  bool factual_check = false;
  bool counterfactual_check = false;
  bool degenerate = false;      // nothing survived the threshold
  bool used_top_k = false;
  double objective = 0.0;
  std::vector<double> trace;
};

ExplanationReport BinarizeAndExtract(const nn::GraphModel& model, const codegraph::CodeGraph& graph,
                                     const OptimizeResult& optimized,
                                     const ExplainerConfig& config);

// Optimize followed by BinarizeAndExtract.
ExplanationReport Explain(const nn::GraphModel& model, const codegraph::CodeGraph& graph,
                          const ExplainerConfig& config, std::uint64_t seed);

struct EdgeSetChecks {
  bool factual = false;         // keeping only these edges preserves the prediction
  bool counterfactual = false;  // removing them flips it
};

// Hard edge subset with all features kept in both views. With a margin the
// winning class must lead by more than `margin`.
EdgeSetChecks CheckEdgeSet(const nn::GraphModel& model, const codegraph::CodeGraph& graph,
                           const std::vector<int>& edges, int predicted, double margin = 0.0);

struct BruteForceResult {
  bool feasible = false;
  std::vector<int> edges;  // a minimum-cardinality subset, lexicographically first
  long subsets_checked = 0;
};

inline constexpr int kBruteForceLimit = 12;

// Exhaustive search for the smallest edge subset passing both checks of
// CheckEdgeSet. Throws SizeError if the graph has more than max_edges edges
// or max_edges exceeds kBruteForceLimit.
BruteForceResult BruteForceExplain(const nn::GraphModel& model, const codegraph::CodeGraph& graph,
                                   int max_edges, double margin = 0.0);

}  // namespace vulnlens::explain
