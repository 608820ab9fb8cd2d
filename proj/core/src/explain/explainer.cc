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

#include "vulnlens/explain/explainer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "vulnlens/common/error.h"
#include "vulnlens/common/rng.h"
#include "vulnlens/tensor/adam.h"
#include "vulnlens/tensor/ops.h"

namespace vulnlens::explain {

using codegraph::CodeGraph;
using tensor::Tape;
using tensor::Tensor;
using tensor::Var;

std::string_view ExplainModeName(ExplainMode mode) {
  switch (mode) {
    case ExplainMode::kDual: return "dual";
    case ExplainMode::kFactualOnly: return "factual-only";
    case ExplainMode::kCounterfactualOnly: return "counterfactual-only";
  }
  return "?";
}

ExplainMode ParseExplainMode(std::string_view name) {
  for (ExplainMode mode :
       {ExplainMode::kDual, ExplainMode::kFactualOnly, ExplainMode::kCounterfactualOnly}) {
    if (ExplainModeName(mode) == name) return mode;
  }
  throw ConfigError("unknown explanation mode '" + std::string(name) + "'");
}

double ExplainerConfig::EffectiveAlpha() const {
  if (mode == ExplainMode::kFactualOnly) return 1.0;
  if (mode == ExplainMode::kCounterfactualOnly) return 0.0;
  return alpha;
}

void ExplainerConfig::Validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1]");
  if (steps < 0) throw ConfigError("steps must be non-negative");
  if (!(learning_rate > 0.0)) throw ConfigError("explainer learning rate must be positive");
  if (!(threshold > 0.0 && threshold < 1.0)) throw ConfigError("threshold must lie in (0, 1)");
  if (!(sparsity >= 0.0)) throw ConfigError("sparsity must be non-negative");
  if (top_k < 0) throw ConfigError("top_k must be non-negative");
  if (!(init_jitter >= 0.0)) throw ConfigError("init_jitter must be non-negative");
}

namespace {

// (P(predicted), P(other)) of one view.
std::pair<Var, Var> ClassProbabilities(Tape& tape, const nn::GraphModel& model,
                                       const CodeGraph& graph, const nn::GraphMasks& masks,
                                       int predicted) {
  Var probs = nn::Softmax(model.Logits(tape, graph, masks));
  return {tensor::Pick(probs, 0, predicted), tensor::Pick(probs, 0, 1 - predicted)};
}

int ArgMax(const Tensor& probs) { return probs(0, 1) > probs(0, 0) ? 1 : 0; }

void CheckPredicted(int predicted) {
  if (predicted != 0 && predicted != 1) throw ShapeError("predicted class must be 0 or 1");
}

}  // namespace

ViewProbabilities EvaluateViews(Tape& tape, const nn::GraphModel& model, const CodeGraph& graph,
                                const MaskVars& masks, int predicted) {
  CheckPredicted(predicted);
  nn::GraphMasks sub{masks.edges, masks.features};
  nn::GraphMasks comp{tensor::OneMinus(masks.edges), std::nullopt};
  if (masks.features) comp.feature_weights = tensor::OneMinus(*masks.features);
  ViewProbabilities views{.sub_predicted = {}, .sub_runner_up = {}, .comp_predicted = {},
                          .comp_runner_up = {}};
  std::tie(views.sub_predicted, views.sub_runner_up) =
      ClassProbabilities(tape, model, graph, sub, predicted);
  std::tie(views.comp_predicted, views.comp_runner_up) =
      ClassProbabilities(tape, model, graph, comp, predicted);
  return views;
}

Strengths ComputeStrengths(const ViewProbabilities& views) {
  return {views.sub_predicted, tensor::Scale(views.comp_predicted, -1.0)};
}

DualLosses ComputeDualLosses(const ViewProbabilities& views) {
  const Strengths s = ComputeStrengths(views);
  Var factual = tensor::Relu(
      tensor::AddScalar(tensor::Add(tensor::Scale(s.factual, -1.0), views.sub_runner_up), 0.5));
  Var counterfactual = tensor::Relu(tensor::AddScalar(
      tensor::Sub(tensor::Scale(s.counterfactual, -1.0), views.comp_runner_up), 0.5));
  return {factual, counterfactual};
}

Var Objective(Tape& tape, const nn::GraphModel& model, const CodeGraph& graph,
              const MaskVars& masks, const ExplainerConfig& config, int predicted) {
  const DualLosses losses = ComputeDualLosses(EvaluateViews(tape, model, graph, masks, predicted));
  const double alpha = config.EffectiveAlpha();
  Var size = tensor::L1Norm(masks.edges);
  if (masks.features) size = tensor::Add(size, tensor::L1Norm(*masks.features));
  return tensor::Add(tensor::Scale(size, config.sparsity),
                     tensor::Add(tensor::Scale(losses.factual, alpha),
                                 tensor::Scale(losses.counterfactual, 1.0 - alpha)));
}

Var ObjectiveFromLogits(Tape& tape, const nn::GraphModel& model, const CodeGraph& graph,
                        Var edge_logits, std::optional<Var> feature_logits,
                        const ExplainerConfig& config, int predicted) {
  MaskVars masks{tensor::Sigmoid(edge_logits), std::nullopt};
  if (feature_logits) masks.features = tensor::Sigmoid(*feature_logits);
  return Objective(tape, model, graph, masks, config, predicted);
}

OptimizeResult Optimize(const nn::GraphModel& model, const CodeGraph& graph,
                        const ExplainerConfig& config, std::uint64_t seed) {
  config.Validate();
  OptimizeResult result;
  result.predicted = model.Predict(graph);

  Rng rng(seed);
  tensor::ParamSet logits;
  logits["edges"] = Tensor(static_cast<int>(graph.edges.size()), 1);
  if (config.mask_features) logits["features"] = Tensor(graph.num_nodes(), graph.feature_dim());
  if (config.init_jitter > 0.0) {
    for (auto& [name, t] : logits) {
      for (double& v : t.data()) v = config.init_jitter * rng.Normal();
    }
  }
  tensor::AdamConfig adam;
  adam.learning_rate = config.learning_rate;
  tensor::AdamState state;

  double best = std::numeric_limits<double>::infinity();
  for (int step = 0; step <= config.steps; ++step) {
    Tape tape;
    Var edge_logits = tape.Leaf(logits.at("edges"));
    std::optional<Var> feature_logits;
    if (config.mask_features) feature_logits = tape.Leaf(logits.at("features"));
    MaskVars masks{tensor::Sigmoid(edge_logits), std::nullopt};
    if (feature_logits) masks.features = tensor::Sigmoid(*feature_logits);
    Var objective = Objective(tape, model, graph, masks, config, result.predicted);
    const double value = objective.value().item();
    if (!std::isfinite(value)) {
      throw NonFiniteError("explanation objective became non-finite at step " +
                           std::to_string(step));
    }
    result.trace.push_back(value);
    if (step == 0) result.initial_objective = value;
    if (value < best) {
      best = value;
      result.mask.edges = masks.edges.value();
      result.mask.features = masks.features ? masks.features->value() : Tensor();
    }
    if (step == config.steps) break;
    tape.Backward(objective);
    tensor::ParamSet grads{{"edges", edge_logits.grad()}};
    if (feature_logits) grads["features"] = feature_logits->grad();
    tensor::AdamStep(logits, grads, state, adam);
  }
  result.objective = best;
  return result;
}

namespace {

// Hard 0/1 masks evaluated as one view; returns the predicted class.
int HardViewClass(const nn::GraphModel& model, const CodeGraph& graph, const Tensor& edges,
                  const std::optional<Tensor>& features) {
  Tape tape;
  nn::GraphMasks masks{tape.Constant(edges), std::nullopt};
  if (features) masks.feature_weights = tape.Constant(*features);
  return ArgMax(nn::Softmax(model.Logits(tape, graph, masks)).value());
}

Tensor Complement(const Tensor& hard) {
  Tensor out = hard;
  for (double& v : out.data()) v = 1.0 - v;
  return out;
}

}  // namespace

ExplanationReport BinarizeAndExtract(const nn::GraphModel& model, const CodeGraph& graph,
                                     const OptimizeResult& optimized,
                                     const ExplainerConfig& config) {
  config.Validate();
  const Tensor& edge_mask = optimized.mask.edges;
  const Tensor& feature_mask = optimized.mask.features;
  const bool has_features = feature_mask.size() > 0;
  const int e = static_cast<int>(graph.edges.size());
  const int v = graph.num_nodes();
  if (edge_mask.rows() != e || (has_features && !feature_mask.SameShape(graph.features))) {
    throw ShapeError("mask does not match the graph");
  }

  ExplanationReport report;
  report.predicted = optimized.predicted;
  report.objective = optimized.objective;
  report.trace = optimized.trace;
  report.node_scores.assign(static_cast<std::size_t>(v), 0.0);
  std::vector<bool> kept(static_cast<std::size_t>(v), false);
  Tensor hard_edges(e, 1);
  for (int k = 0; k < e; ++k) {
    const auto& edge = graph.edges[k];
    for (int node : {edge.src, edge.dst}) {
      report.node_scores[node] = std::max(report.node_scores[node], edge_mask[k]);
    }
    if (edge_mask[k] >= config.threshold) {
      hard_edges[k] = 1.0;
      report.kept_edges.push_back(k);
      kept[edge.src] = kept[edge.dst] = true;
    }
  }
  std::optional<Tensor> hard_features;
  if (has_features) {
    hard_features = Tensor(v, graph.feature_dim());
    for (int r = 0; r < v; ++r) {
      double row_max = 0.0;
      for (int c = 0; c < graph.feature_dim(); ++c) {
        row_max = std::max(row_max, feature_mask(r, c));
        if (feature_mask(r, c) >= config.threshold) (*hard_features)(r, c) = 1.0;
      }
      report.node_scores[r] = std::max(report.node_scores[r], row_max);
      if (row_max >= config.threshold) kept[r] = true;
    }
  }
  for (int r = 0; r < v; ++r) {
    if (kept[r]) report.kept_nodes.push_back(r);
  }

  auto rank = [&](bool only_kept) {
    std::map<int, double> lines;
    for (int r = 0; r < v; ++r) {
      if (only_kept && !kept[r]) continue;
      for (int line : graph.nodes[r].Lines()) {
        auto [it, inserted] = lines.emplace(line, report.node_scores[r]);
        if (!inserted) it->second = std::max(it->second, report.node_scores[r]);
      }
    }
    std::vector<RankedStatement> ranked;
    for (const auto& [line, score] : lines) ranked.push_back({line, score});
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.score > b.score; });
    return ranked;
  };
  report.statements = rank(true);
  report.degenerate = report.statements.empty();
  if (report.degenerate && config.top_k > 0) {
    report.statements = rank(false);
    if (static_cast<int>(report.statements.size()) > config.top_k) {
      report.statements.resize(static_cast<std::size_t>(config.top_k));
    }
    report.used_top_k = true;
  }

  std::optional<Tensor> comp_features;
  if (hard_features) comp_features = Complement(*hard_features);
  report.factual_check = HardViewClass(model, graph, hard_edges, hard_features) == report.predicted;
  report.counterfactual_check =
      HardViewClass(model, graph, Complement(hard_edges), comp_features) != report.predicted;
  return report;
}

ExplanationReport Explain(const nn::GraphModel& model, const CodeGraph& graph,
                          const ExplainerConfig& config, std::uint64_t seed) {
  return BinarizeAndExtract(model, graph, Optimize(model, graph, config, seed), config);
}

EdgeSetChecks CheckEdgeSet(const nn::GraphModel& model, const CodeGraph& graph,
                           const std::vector<int>& edges, int predicted, double margin) {
  CheckPredicted(predicted);
  const int e = static_cast<int>(graph.edges.size());
  Tensor keep(e, 1);
  for (int k : edges) {
    if (k < 0 || k >= e) throw ShapeError("edge index out of range");
    keep[k] = 1.0;
  }
  auto lead = [&](const Tensor& weights) {
    Tape tape;
    const Tensor p =
        nn::Softmax(model.Logits(tape, graph, {tape.Constant(weights), std::nullopt})).value();
    return p(0, predicted) - p(0, 1 - predicted);
  };
  return {lead(keep) > margin, -lead(Complement(keep)) > margin};
}

BruteForceResult BruteForceExplain(const nn::GraphModel& model, const CodeGraph& graph,
                                   int max_edges, double margin) {
  const int e = static_cast<int>(graph.edges.size());
  if (max_edges > kBruteForceLimit) {
    throw SizeError("brute-force search is limited to " + std::to_string(kBruteForceLimit) +
                    " edges");
  }
  if (e > max_edges) {
    throw SizeError("graph has " + std::to_string(e) + " edges, limit is " +
                    std::to_string(max_edges));
  }
  const int predicted = model.Predict(graph);
  BruteForceResult result;
  for (int size = 0; size <= e; ++size) {
    std::vector<int> subset(static_cast<std::size_t>(size));
    for (int k = 0; k < size; ++k) subset[k] = k;
    while (true) {
      ++result.subsets_checked;
      const EdgeSetChecks checks = CheckEdgeSet(model, graph, subset, predicted, margin);
      if (checks.factual && checks.counterfactual) {
        result.feasible = true;
        result.edges = subset;
        return result;
      }
      // Next combination in lexicographic order.
      int k = size - 1;
      while (k >= 0 && subset[k] == e - size + k) --k;
      if (k < 0) break;
      ++subset[k];
      for (int j = k + 1; j < size; ++j) subset[j] = subset[j - 1] + 1;
    }
  }
  return result;
}

}  // namespace vulnlens::explain
