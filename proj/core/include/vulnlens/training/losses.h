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

#include <optional>
#include <vector>

#include "vulnlens/tensor/tape.h"

namespace vulnlens::training {

inline constexpr double kDefaultTemperature = 0.07;
inline constexpr double kDefaultLambda = 0.5;

// Layout of a contrastive batch of 2N views: rows 2k and 2k+1 hold the
// original and the augmented view of sample k, so the partner of row i is
// i ^ 1. `labels[i]` is set for views in the labelled subset.
struct BatchPlan {
  std::vector<std::optional<int>> labels;
  double temperature = kDefaultTemperature;
  double lambda = kDefaultLambda;

  // All views unlabelled.
  static BatchPlan Unlabeled(int num_pairs);
  // One label per pair, copied onto both views.
  static BatchPlan FromPairLabels(const std::vector<std::optional<int>>& pair_labels);

  int size() const { return static_cast<int>(labels.size()); }
  static int Partner(int view) { return view ^ 1; }
  // Throws ShapeError for an odd or empty batch, ConfigError for bad
  // temperature or lambda.
  void Validate() const;
};

struct SupConStats {
  int anchors = 0;   // labelled views that contributed
  int skipped = 0;   // labelled views without any positive
};

// Self-supervised loss: each view against its partner, with every other view
// of the batch as a candidate. `z` holds one unit-norm row per view.
tensor::Var NceLoss(tensor::Var z, const BatchPlan& plan);

// Supervised loss over labelled views: positives are the other views with the
// same label. Anchors without positives are skipped; EmptyPositivesError if
// none remain.
tensor::Var SupConLoss(tensor::Var z, const BatchPlan& plan, SupConStats* stats = nullptr);

// (1 - lambda) * NceLoss + lambda * SupConLoss. The supervised term is
// dropped when lambda == 0 and the self-supervised term when lambda == 1.
tensor::Var TotalLoss(tensor::Var z, const BatchPlan& plan);

// Asymmetric variant: each original (even row) against all augmented views
// (odd rows); its own augmentation is the positive.
tensor::Var InfoNceLoss(tensor::Var z, const BatchPlan& plan);

// Mean negative log-likelihood of `labels` under row-wise softmax of N x 2
// logits.
tensor::Var CrossEntropyLoss(tensor::Var logits, const std::vector<int>& labels);

}  // namespace vulnlens::training
