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
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vulnlens/codegraph/graph.h"
#include "vulnlens/minic/ast.h"
#include "vulnlens/nn/model.h"
#include "vulnlens/tensor/tensor.h"

namespace vulnlens::training {

// A parsed function with its graph.
struct Sample {
  std::string id;
  minic::Function function;
  codegraph::CodeGraph graph;
  std::optional<int> label;
};

Sample MakeSample(std::string id, minic::Function function, std::optional<int> label,
                  int feature_dim = codegraph::kDefaultFeatureDim);

// Seeded 80/10/10 partition of [0, n).
struct Split {
  std::vector<int> train;
  std::vector<int> validation;
  std::vector<int> test;
};
Split SplitIndices(int n, std::uint64_t seed);

template <typename T>
std::vector<T> Gather(const std::vector<T>& items, const std::vector<int>& indices) {
  std::vector<T> out;
  out.reserve(indices.size());
  for (int i : indices) out.push_back(items.at(static_cast<std::size_t>(i)));
  return out;
}

enum class LossMode {
  kCoca,     // (1 - lambda) * NCE + lambda * SupCon
  kNce,      // self-supervised term only
  kInfoNce,  // originals against augmented views only
  kCe,       // encoder and classifier trained jointly with cross-entropy
};

std::string_view LossModeName(LossMode mode);
LossMode ParseLossMode(std::string_view name);

struct TrainConfig {
  int batch_size = 256;  // views per contrastive batch (two per sample)
  double learning_rate = 1e-5;
  // Classifier head on frozen embeddings.
  double classifier_learning_rate = 1e-2;
  int max_epochs = 100;
  int patience = 10;
  double labeled_fraction = 0.5;
  double temperature = 0.07;
  double lambda = 0.5;
  double augment_probability = 0.5;
  LossMode loss = LossMode::kCoca;
  std::uint64_t seed = 42;

  // Throws ConfigError.
  void Validate() const;
};

struct EpochRecord {
  int epoch = 0;
  double train_loss = 0.0;
  double validation_loss = 0.0;
  // Classifier training only.
  std::optional<double> validation_f1;
};

struct PretrainResult {
  tensor::ParamSet encoder;
  // Jointly trained classifier head; only set in kCe mode.
  tensor::ParamSet classifier;
  int best_epoch = 0;
  // Monitored loss before the first update.
  double initial_loss = 0.0;
  std::vector<EpochRecord> log;
  std::vector<std::string> diagnostics;
};

using EpochCallback = std::function<void(const EpochRecord&)>;

// Trains the encoder (and a projection head that is then discarded) on
// shuffled batches of originals and freshly augmented views. Keeps the
// parameters with the lowest validation loss; stops after `patience` epochs
// without improvement. With an empty validation set the training loss is
// used instead.
PretrainResult PretrainEncoder(const std::vector<Sample>& train,
                               const std::vector<Sample>& validation,
                               const nn::EncoderConfig& encoder_config, const TrainConfig& config,
                               const EpochCallback& on_epoch = {});

struct ClassifierResult {
  tensor::ParamSet classifier;
  int best_epoch = 0;
  std::vector<EpochRecord> log;
};

// Cross-entropy fit of the classifier head on frozen embeddings with early
// stopping on validation F1. DataError if a class is missing from `train` or
// a sample is unlabelled.
ClassifierResult TrainClassifier(const nn::EncoderConfig& encoder_config,
                                 const tensor::ParamSet& encoder,
                                 const std::vector<Sample>& train,
                                 const std::vector<Sample>& validation, const TrainConfig& config,
                                 const EpochCallback& on_epoch = {});

struct Prediction {
  int label = 0;  // 1 = vulnerable
  tensor::Tensor probabilities;  // 1 x 2
  tensor::Tensor embedding;      // 1 x embedding_dim
};

Prediction Predict(const nn::EncoderClassifier& model, const codegraph::CodeGraph& graph);

// Parse, build the graph, encode without masks, classify.
Prediction Detect(std::string_view source, const nn::EncoderClassifier& model);

// Fraction of samples whose prediction is unchanged on a freshly augmented
// variant (seeded per sample id).
double AugmentationConsistency(const nn::EncoderClassifier& model,
                               const std::vector<Sample>& samples, std::uint64_t seed,
                               double augment_probability = 0.5);

// Augmented variant of a sample, graph included.
Sample AugmentSample(const Sample& sample, std::uint64_t seed, double augment_probability,
                     int feature_dim);

}  // namespace vulnlens::training
