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

#include "vulnlens/training/losses.h"

#include <cmath>
#include <string>

#include "vulnlens/common/error.h"
#include "vulnlens/tensor/ops.h"

namespace vulnlens::training {

using tensor::Tensor;
using tensor::Var;

BatchPlan BatchPlan::Unlabeled(int num_pairs) {
  BatchPlan plan;
  plan.labels.assign(static_cast<std::size_t>(2 * std::max(num_pairs, 0)), std::nullopt);
  return plan;
}

BatchPlan BatchPlan::FromPairLabels(const std::vector<std::optional<int>>& pair_labels) {
  BatchPlan plan;
  for (const auto& label : pair_labels) {
    plan.labels.push_back(label);
    plan.labels.push_back(label);
  }
  return plan;
}

void BatchPlan::Validate() const {
  if (labels.empty() || labels.size() % 2 != 0) {
    throw ShapeError("contrastive batch needs an even, non-zero number of views, got " +
                     std::to_string(labels.size()));
  }
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw ConfigError("temperature must be positive");
  }
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ConfigError("lambda must lie in [0, 1]");
}

namespace {

// Log-probabilities log[exp(s_ia) / sum_{a != i} exp(s_ia)] over the batch.
Var CandidateLogProbs(Var z, const BatchPlan& plan) {
  plan.Validate();
  if (z.rows() != plan.size()) {
    throw ShapeError("embedding rows " + std::to_string(z.rows()) + " for a batch of " +
                     std::to_string(plan.size()));
  }
  const int n = plan.size();
  Var sims = tensor::Scale(tensor::MatMul(z, tensor::Transpose(z)), 1.0 / plan.temperature);
  Tensor others(n, n, 1.0);
  for (int i = 0; i < n; ++i) others(i, i) = 0.0;
  return tensor::MaskedLogSoftmax(sims, others);
}

// -sum(log_probs .* weights) / count
Var WeightedNll(Var log_probs, const Tensor& weights, int count) {
  return tensor::Scale(tensor::Sum(tensor::Mul(log_probs, log_probs.tape->Constant(weights))),
                       -1.0 / count);
}

}  // namespace

Var NceLoss(Var z, const BatchPlan& plan) {
  Var log_probs = CandidateLogProbs(z, plan);
  const int n = plan.size();
  Tensor weights(n, n);
  for (int i = 0; i < n; ++i) weights(i, BatchPlan::Partner(i)) = 1.0;
  return WeightedNll(log_probs, weights, n);
}

Var SupConLoss(Var z, const BatchPlan& plan, SupConStats* stats) {
  Var log_probs = CandidateLogProbs(z, plan);
  const int n = plan.size();
  Tensor weights(n, n);
  SupConStats local;
  for (int i = 0; i < n; ++i) {
    if (!plan.labels[i]) continue;
    std::vector<int> positives;
    for (int q = 0; q < n; ++q) {
      if (q != i && plan.labels[q] == plan.labels[i]) positives.push_back(q);
    }
    if (positives.empty()) {
      ++local.skipped;
      continue;
    }
    ++local.anchors;
    for (int q : positives) weights(i, q) = 1.0 / static_cast<double>(positives.size());
  }
  if (stats) *stats = local;
  if (local.anchors == 0) {
    throw EmptyPositivesError("no labelled view has a positive in the batch (" +
                              std::to_string(local.skipped) + " skipped)");
  }
  return WeightedNll(log_probs, weights, local.anchors);
}

Var TotalLoss(Var z, const BatchPlan& plan) {
  plan.Validate();
  if (plan.lambda == 0.0) return NceLoss(z, plan);
  if (plan.lambda == 1.0) return SupConLoss(z, plan);
  return tensor::Add(tensor::Scale(NceLoss(z, plan), 1.0 - plan.lambda),
                     tensor::Scale(SupConLoss(z, plan), plan.lambda));
}

Var InfoNceLoss(Var z, const BatchPlan& plan) {
  plan.Validate();
  if (z.rows() != plan.size()) throw ShapeError("embedding rows do not match the batch");
  const int pairs = plan.size() / 2;
  std::vector<Var> originals, augmented;
  for (int k = 0; k < pairs; ++k) {
    originals.push_back(tensor::SliceRows(z, 2 * k, 2 * k + 1));
    augmented.push_back(tensor::SliceRows(z, 2 * k + 1, 2 * k + 2));
  }
  Var sims = tensor::Scale(
      tensor::MatMul(tensor::ConcatRows(originals), tensor::Transpose(tensor::ConcatRows(augmented))),
      1.0 / plan.temperature);
  Tensor identity(pairs, pairs);
  for (int k = 0; k < pairs; ++k) identity(k, k) = 1.0;
  return WeightedNll(tensor::LogSoftmax(sims), identity, pairs);
}

Var CrossEntropyLoss(Var logits, const std::vector<int>& labels) {
  if (logits.cols() != 2 || logits.rows() != static_cast<int>(labels.size()) || labels.empty()) {
    throw ShapeError("cross-entropy expects N x 2 logits and N labels");
  }
  Tensor onehot(logits.rows(), 2);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) throw DataError("labels must be 0 or 1");
    onehot(static_cast<int>(i), labels[i]) = 1.0;
  }
  return WeightedNll(tensor::LogSoftmax(logits), onehot, logits.rows());
}

}  // namespace vulnlens::training
