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

#include "vulnlens/training/trainer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "vulnlens/common/error.h"
#include "vulnlens/common/rng.h"
#include "vulnlens/eval/metrics.h"
#include "vulnlens/minic/parser.h"
#include "vulnlens/tensor/adam.h"
#include "vulnlens/tensor/ops.h"
#include "vulnlens/training/losses.h"
#include "vulnlens/transforms/transforms.h"

namespace vulnlens::training {

using tensor::ParamSet;
using tensor::Tape;
using tensor::Tensor;
using tensor::Var;

Sample MakeSample(std::string id, minic::Function function, std::optional<int> label,
                  int feature_dim) {
  Sample s;
  s.id = std::move(id);
  s.graph = codegraph::BuildGraph(function, label, feature_dim);
  s.function = std::move(function);
  s.label = label;
  return s;
}

Split SplitIndices(int n, std::uint64_t seed) {
  std::vector<int> order(static_cast<std::size_t>(std::max(n, 0)));
  std::iota(order.begin(), order.end(), 0);
  Rng rng(DeriveSeed(seed, "split"));
  rng.Shuffle(order);
  const int train_end = n * 8 / 10;
  const int validation_end = train_end + n / 10;
  Split split;
  split.train.assign(order.begin(), order.begin() + train_end);
  split.validation.assign(order.begin() + train_end, order.begin() + validation_end);
  split.test.assign(order.begin() + validation_end, order.end());
  return split;
}

std::string_view LossModeName(LossMode mode) {
  switch (mode) {
    case LossMode::kCoca: return "coca";
    case LossMode::kNce: return "nce";
    case LossMode::kInfoNce: return "infonce";
    case LossMode::kCe: return "ce";
  }
  return "?";
}

LossMode ParseLossMode(std::string_view name) {
  for (LossMode mode : {LossMode::kCoca, LossMode::kNce, LossMode::kInfoNce, LossMode::kCe}) {
    if (LossModeName(mode) == name) return mode;
  }
  throw ConfigError("unknown loss mode '" + std::string(name) + "'");
}

void TrainConfig::Validate() const {
  if (batch_size < 2 || batch_size % 2 != 0) throw ConfigError("batch_size must be even and >= 2");
  if (!(learning_rate > 0.0) || !(classifier_learning_rate > 0.0)) {
    throw ConfigError("learning rates must be positive");
  }
  if (max_epochs < 0) throw ConfigError("max_epochs must be non-negative");
  if (patience < 1) throw ConfigError("patience must be at least 1");
  if (!(labeled_fraction > 0.0 && labeled_fraction <= 1.0)) {
    throw ConfigError("labeled_fraction must lie in (0, 1]");
  }
  if (!(temperature > 0.0)) throw ConfigError("temperature must be positive");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw ConfigError("lambda must lie in [0, 1]");
  if (!(augment_probability >= 0.0 && augment_probability <= 1.0)) {
    throw ConfigError("augment_probability must lie in [0, 1]");
  }
}

Sample AugmentSample(const Sample& sample, std::uint64_t seed, double augment_probability,
                     int feature_dim) {
  transforms::AugmentConfig config;
  config.per_op_probability = augment_probability;
  config.rng_seed = seed;
  return MakeSample(sample.id, transforms::Augment(sample.function, config).function, sample.label,
                    feature_dim);
}

namespace {

ParamSet Subset(const ParamSet& params, std::string_view prefix) {
  ParamSet out;
  for (const auto& [name, t] : params) {
    if (name.starts_with(prefix)) out.emplace(name, t);
  }
  return out;
}

void Merge(ParamSet& into, const ParamSet& from) {
  for (const auto& [name, t] : from) into[name] = t;
}

ParamSet Gradients(const nn::BoundParams& bound) {
  ParamSet grads;
  for (const auto& [name, var] : bound) grads.emplace(name, var.grad());
  return grads;
}

// One batch of the pretraining objective: `views` holds original/augmented
// pairs interleaved (only originals in kCe mode).
struct BatchResult {
  double loss = 0.0;
  ParamSet grads;
};

BatchResult RunBatch(const ParamSet& params, const std::vector<const Sample*>& views,
                     const nn::EncoderConfig& encoder_config, const TrainConfig& config,
                     Rng& label_rng, bool with_grads) {
  Tape tape;
  const nn::BoundParams bound = nn::Bind(tape, params, with_grads);
  std::vector<Var> embeddings;
  embeddings.reserve(views.size());
  for (const Sample* s : views) {
    embeddings.push_back(nn::Encode(tape, bound, encoder_config, s->graph));
  }
  Var h = tensor::ConcatRows(embeddings);
  std::optional<Var> loss;
  if (config.loss == LossMode::kCe) {
    std::vector<int> labels;
    for (const Sample* s : views) {
      if (!s->label) throw DataError("sample '" + s->id + "' has no label");
      labels.push_back(*s->label);
    }
    loss = CrossEntropyLoss(nn::ClassifierLogits(bound, h), labels);
  } else {
    const int pairs = static_cast<int>(views.size()) / 2;
    std::vector<int> order(static_cast<std::size_t>(pairs));
    std::iota(order.begin(), order.end(), 0);
    label_rng.Shuffle(order);
    const int labeled = std::clamp(
        static_cast<int>(std::lround(config.labeled_fraction * pairs)), 1, pairs);
    std::vector<std::optional<int>> pair_labels(static_cast<std::size_t>(pairs));
    for (int k = 0; k < labeled; ++k) pair_labels[order[k]] = views[2 * order[k]]->label;
    BatchPlan plan = BatchPlan::FromPairLabels(pair_labels);
    plan.temperature = config.temperature;
    plan.lambda = config.loss == LossMode::kCoca ? config.lambda : 0.0;
    Var z = nn::Project(bound, h);
    loss = config.loss == LossMode::kInfoNce ? InfoNceLoss(z, plan) : TotalLoss(z, plan);
  }
  BatchResult result;
  result.loss = loss->value().item();
  if (with_grads) {
    tape.Backward(*loss);
    result.grads = Gradients(bound);
  }
  return result;
}

std::vector<const Sample*> BatchViews(const std::vector<const Sample*>& originals,
                                      const std::vector<Sample>& augmented,
                                      const std::vector<int>& members, bool ce) {
  std::vector<const Sample*> views;
  for (int i : members) {
    views.push_back(originals[i]);
    if (!ce) views.push_back(&augmented[i]);
  }
  return views;
}

std::vector<std::vector<int>> Batches(std::vector<int> order, int per_batch) {
  std::vector<std::vector<int>> batches;
  for (std::size_t start = 0; start < order.size(); start += per_batch) {
    const std::size_t end = std::min(order.size(), start + per_batch);
    batches.emplace_back(order.begin() + start, order.begin() + end);
  }
  return batches;
}

Tensor GatherRows(const Tensor& rows, const std::vector<int>& indices) {
  Tensor out(static_cast<int>(indices.size()), rows.cols());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    for (int c = 0; c < rows.cols(); ++c) out(static_cast<int>(i), c) = rows(indices[i], c);
  }
  return out;
}

}  // namespace

PretrainResult PretrainEncoder(const std::vector<Sample>& train,
                               const std::vector<Sample>& validation,
                               const nn::EncoderConfig& encoder_config, const TrainConfig& config,
                               const EpochCallback& on_epoch) {
  config.Validate();
  encoder_config.Validate();
  if (train.empty()) throw DataError("empty training corpus");
  const bool ce = config.loss == LossMode::kCe;
  PretrainResult result;

  Rng init_rng(DeriveSeed(config.seed, "init"));
  ParamSet params = nn::InitEncoder(encoder_config, init_rng);
  Merge(params, ce ? nn::InitClassifier(encoder_config, init_rng)
                   : nn::InitProjection(encoder_config, init_rng));

  int per_batch = ce ? config.batch_size : config.batch_size / 2;
  if (per_batch > static_cast<int>(train.size())) {
    per_batch = static_cast<int>(train.size());
    result.diagnostics.push_back("batch shrunk to corpus size " + std::to_string(per_batch));
  }

  // Validation views are augmented once so the monitored loss is comparable
  // across epochs.
  const bool use_validation = !validation.empty();
  const std::vector<Sample>& monitor = use_validation ? validation : train;
  std::vector<const Sample*> monitor_originals;
  std::vector<Sample> monitor_views;
  for (const Sample& s : monitor) {
    monitor_originals.push_back(&s);
    if (!ce) {
      monitor_views.push_back(AugmentSample(s, DeriveSeed(config.seed, "monitor/" + s.id),
                                            config.augment_probability,
                                            encoder_config.feature_dim));
    }
  }
  std::vector<int> monitor_order(monitor.size());
  std::iota(monitor_order.begin(), monitor_order.end(), 0);
  const auto monitor_batches = Batches(monitor_order, per_batch);
  auto monitor_loss = [&](const ParamSet& current) {
    Rng label_rng(DeriveSeed(config.seed, "monitor-labels"));
    double total = 0.0;
    for (const auto& members : monitor_batches) {
      const auto views = BatchViews(monitor_originals, monitor_views, members, ce);
      total += RunBatch(current, views, encoder_config, config, label_rng, false).loss *
               static_cast<double>(members.size());
    }
    return total / static_cast<double>(monitor.size());
  };

  std::vector<const Sample*> originals;
  for (const Sample& s : train) originals.push_back(&s);

  tensor::AdamConfig adam;
  adam.learning_rate = config.learning_rate;
  tensor::AdamState state;
  Rng order_rng(DeriveSeed(config.seed, "order"));
  Rng label_rng(DeriveSeed(config.seed, "labels"));

  double best = monitor_loss(params);
  result.initial_loss = best;
  ParamSet best_params = params;
  int stale = 0;
  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    std::vector<Sample> augmented;
    if (!ce) {
      augmented.reserve(train.size());
      for (const Sample& s : train) {
        augmented.push_back(AugmentSample(
            s, DeriveSeed(DeriveSeed(config.seed, s.id), static_cast<std::uint64_t>(epoch)),
            config.augment_probability, encoder_config.feature_dim));
      }
    }
    std::vector<int> order(train.size());
    std::iota(order.begin(), order.end(), 0);
    order_rng.Shuffle(order);
    double train_loss = 0.0;
    for (const auto& members : Batches(order, per_batch)) {
      const auto views = BatchViews(originals, augmented, members, ce);
      BatchResult batch = RunBatch(params, views, encoder_config, config, label_rng, true);
      tensor::AdamStep(params, batch.grads, state, adam);
      train_loss += batch.loss * static_cast<double>(members.size());
    }
    EpochRecord record;
    record.epoch = epoch;
    record.train_loss = train_loss / static_cast<double>(train.size());
    record.validation_loss = monitor_loss(params);
    result.log.push_back(record);
    if (on_epoch) on_epoch(record);
    if (record.validation_loss < best) {
      best = record.validation_loss;
      best_params = params;
      result.best_epoch = epoch;
      stale = 0;
    } else if (++stale >= config.patience) {
      break;
    }
  }
  result.encoder = Subset(best_params, "enc.");
  if (ce) result.classifier = Subset(best_params, "cls.");
  return result;
}

ClassifierResult TrainClassifier(const nn::EncoderConfig& encoder_config, const ParamSet& encoder,
                                 const std::vector<Sample>& train,
                                 const std::vector<Sample>& validation, const TrainConfig& config,
                                 const EpochCallback& on_epoch) {
  config.Validate();
  auto embed = [&](const std::vector<Sample>& samples, Tensor& h, std::vector<int>& labels) {
    h = Tensor(static_cast<int>(samples.size()), encoder_config.embedding_dim());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (!samples[i].label) throw DataError("sample '" + samples[i].id + "' has no label");
      labels.push_back(*samples[i].label);
      const Tensor row = nn::EmbedGraph(encoder_config, encoder, samples[i].graph);
      for (int c = 0; c < row.cols(); ++c) h(static_cast<int>(i), c) = row(0, c);
    }
  };
  Tensor train_h, monitor_h;
  std::vector<int> train_labels, monitor_labels;
  embed(train, train_h, train_labels);
  for (int cls : {0, 1}) {
    if (std::find(train_labels.begin(), train_labels.end(), cls) == train_labels.end()) {
      throw DataError("class " + std::to_string(cls) + " is absent from the training labels");
    }
  }
  if (validation.empty()) {
    monitor_h = train_h;
    monitor_labels = train_labels;
  } else {
    embed(validation, monitor_h, monitor_labels);
  }

  Rng rng(DeriveSeed(config.seed, "classifier"));
  ParamSet params = nn::InitClassifier(encoder_config, rng);
  tensor::AdamConfig adam;
  adam.learning_rate = config.classifier_learning_rate;
  tensor::AdamState state;

  auto evaluate = [&](const ParamSet& current, double& loss) {
    Tape tape;
    Var logits = nn::ClassifierLogits(nn::Bind(tape, current, false), tape.Constant(monitor_h));
    loss = CrossEntropyLoss(logits, monitor_labels).value().item();
    std::vector<int> predicted;
    for (int r = 0; r < logits.rows(); ++r) {
      predicted.push_back(logits.value()(r, 1) > logits.value()(r, 0) ? 1 : 0);
    }
    return eval::ComputeDetectionMetrics(predicted, monitor_labels).f1;
  };

  ClassifierResult result;
  double best_loss = 0.0;
  double best_f1 = evaluate(params, best_loss);
  ParamSet best_params = params;
  int stale = 0;
  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    std::vector<int> order(train_labels.size());
    std::iota(order.begin(), order.end(), 0);
    rng.Shuffle(order);
    double train_loss = 0.0;
    for (const auto& members : Batches(order, config.batch_size)) {
      Tape tape;
      const nn::BoundParams bound = nn::Bind(tape, params, true);
      Var loss = CrossEntropyLoss(
          nn::ClassifierLogits(bound, tape.Constant(GatherRows(train_h, members))),
          Gather(train_labels, members));
      tape.Backward(loss);
      tensor::AdamStep(params, Gradients(bound), state, adam);
      train_loss += loss.value().item() * static_cast<double>(members.size());
    }
    EpochRecord record;
    record.epoch = epoch;
    record.train_loss = train_loss / static_cast<double>(train_labels.size());
    record.validation_f1 = evaluate(params, record.validation_loss);
    result.log.push_back(record);
    if (on_epoch) on_epoch(record);
    const double f1 = *record.validation_f1;
    if (f1 > best_f1 || (f1 == best_f1 && record.validation_loss < best_loss)) {
      best_f1 = f1;
      best_loss = record.validation_loss;
      best_params = params;
      result.best_epoch = epoch;
      stale = 0;
    } else if (++stale >= config.patience) {
      break;
    }
  }
  result.classifier = std::move(best_params);
  return result;
}

Prediction Predict(const nn::EncoderClassifier& model, const codegraph::CodeGraph& graph) {
  Tape tape;
  Var h = nn::Encode(tape, nn::Bind(tape, model.encoder(), false), model.config(), graph);
  Var logits = nn::ClassifierLogits(nn::Bind(tape, model.classifier(), false), h);
  Prediction p;
  p.probabilities = nn::Softmax(logits).value();
  p.embedding = h.value();
  p.label = p.probabilities(0, 1) > p.probabilities(0, 0) ? 1 : 0;
  return p;
}

Prediction Detect(std::string_view source, const nn::EncoderClassifier& model) {
  return Predict(model, codegraph::BuildGraph(minic::ParseSource(source), std::nullopt,
                                              model.config().feature_dim));
}

double AugmentationConsistency(const nn::EncoderClassifier& model,
                               const std::vector<Sample>& samples, std::uint64_t seed,
                               double augment_probability) {
  if (samples.empty()) return 0.0;
  int unchanged = 0;
  for (const Sample& s : samples) {
    const Sample variant = AugmentSample(s, DeriveSeed(seed, "consistency/" + s.id),
                                         augment_probability, model.config().feature_dim);
    if (Predict(model, s.graph).label == Predict(model, variant.graph).label) ++unchanged;
  }
  return static_cast<double>(unchanged) / static_cast<double>(samples.size());
}

}  // namespace vulnlens::training
