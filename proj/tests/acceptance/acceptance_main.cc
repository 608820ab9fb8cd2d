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

// End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails. Criterion numbers given on the
// command line restrict the run to those criteria; `--report PATH` also
// writes the result lines to PATH.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support/gradcheck.h"
#include "support/oracles.h"
#include "support/program_gen.h"
#include "vulnlens/common/error.h"
#include "vulnlens/common/io.h"
#include "vulnlens/common/rng.h"
#include "vulnlens/eval/corpus.h"
#include "vulnlens/eval/metrics.h"
#include "vulnlens/eval/motif.h"
#include "vulnlens/explain/explainer.h"
#include "vulnlens/minic/interpreter.h"
#include "vulnlens/minic/parser.h"
#include "vulnlens/nn/model.h"
#include "vulnlens/tensor/ops.h"
#include "vulnlens/training/losses.h"
#include "vulnlens/training/trainer.h"
#include "vulnlens/transforms/transforms.h"

namespace vulnlens {
namespace {

namespace fs = std::filesystem;
using tensor::ParamSet;
using tensor::Tape;
using tensor::Tensor;
using tensor::Var;

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Stopwatch {
 public:
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string Fmt(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.4g", v);
  return buffer;
}

void Progress(const std::string& message) { std::cerr << "  .. " << message << std::endl; }

// 1. Every operator instance on >= 200 random programs preserves
// interpreter traces on 16 input vectors.
Outcome TransformEquivalence() {
  Stopwatch clock;
  long instances = 0, failures = 0;
  std::map<transforms::Op, long> per_op;
  for (std::uint64_t seed = 0; seed < 250; ++seed) {
    const minic::Function fn = testing::RandomProgram(DeriveSeed(2024, seed));
    const auto inputs = testing::InputVectors(DeriveSeed(2025, seed));
    std::vector<minic::ExecTrace> reference;
    for (const auto& in : inputs) reference.push_back(minic::Interpret(fn, in));
    for (const transforms::Site& site : transforms::FindSites(fn)) {
      for (transforms::Op op : site.applicable_ops) {
        const minic::Function out = testing::ApplyAt(fn, site, op);
        bool same = true;
        for (std::size_t k = 0; k < inputs.size() && same; ++k) {
          same = minic::Interpret(out, inputs[k]).SameBehaviour(reference[k]);
        }
        ++instances;
        ++per_op[op];
        failures += !same;
      }
    }
  }
  const double seconds = clock.Seconds();
  std::string detail = "250 programs, " + std::to_string(instances) + " operator instances, " +
                       std::to_string(failures) + " mismatches, " + Fmt(seconds) + " s;";
  for (const auto& [op, count] : per_op) {
    detail += " " + std::string(transforms::OpCode(op)) + "=" + std::to_string(count);
  }
  return {failures == 0 && instances > 0 && seconds < 120.0, detail};
}

// 2. Gradient checks: primitives, total loss through projection and encoder,
// explainer objective with respect to the mask logits.
Outcome GradientIntegrity() {
  constexpr int kInstances = 20;
  constexpr double kTolerance = 1e-4;
  double worst_primitive = 0.0;
  for (const testing::GradCase& c : testing::PrimitiveGradCases()) {
    for (int i = 0; i < kInstances; ++i) {
      worst_primitive = std::max(worst_primitive, testing::PrimitiveGradientError(c, i));
    }
  }

  eval::CorpusSpec spec;
  spec.n_samples = 40;
  spec.rng_seed = 5;
  const auto corpus = eval::GenerateCorpus(spec);
  double worst_loss = 0.0;
  double worst_objective = 0.0;
  for (nn::Arch arch : {nn::Arch::kGcn, nn::Arch::kGgnn}) {
    nn::EncoderConfig config;
    config.arch = arch;
    config.feature_dim = 16;
    config.hidden_dim = 8;
    std::vector<training::Sample> samples;
    for (const auto& c : corpus) {
      samples.push_back(
          training::MakeSample(c.id, minic::ParseSource(c.code), c.label, config.feature_dim));
    }
    for (int instance = 0; instance < kInstances; ++instance) {
      Rng rng(DeriveSeed(77, static_cast<std::uint64_t>(instance)));
      ParamSet params = nn::InitEncoder(config, rng);
      for (auto& [name, t] : nn::InitProjection(config, rng)) params[name] = t;
      std::vector<training::Sample> views;
      std::vector<std::optional<int>> labels;
      for (int k = 0; k < 3; ++k) {
        const training::Sample& s = samples[rng.Index(samples.size())];
        views.push_back(s);
        views.push_back(training::AugmentSample(s, rng.NextU64(), 0.5, config.feature_dim));
        labels.push_back(s.label);
      }
      labels[0] = 0;
      labels[1] = 1;
      training::BatchPlan plan = training::BatchPlan::FromPairLabels(labels);
      plan.temperature = 0.5;
      for (const auto& [target, value] : params) {
        const testing::ScalarFn fn = [&, target = target](Tape& tape, Var w) {
          nn::BoundParams bound = nn::Bind(tape, params, false);
          bound.insert_or_assign(target, w);
          std::vector<Var> h;
          for (const auto& s : views) h.push_back(nn::Encode(tape, bound, config, s.graph));
          return training::TotalLoss(nn::Project(bound, tensor::ConcatRows(h)), plan);
        };
        worst_loss = std::max(worst_loss, testing::GradientError(fn, value, 1e-6));
      }

      nn::EncoderConfig small = config;
      Rng model_rng(DeriveSeed(78, static_cast<std::uint64_t>(instance)));
      ParamSet encoder = nn::InitEncoder(small, model_rng);
      ParamSet head = nn::InitClassifier(small, model_rng);
      for (double& v : head.at("cls.w2").data()) v *= 4.0;
      const nn::EncoderClassifier model(small, encoder, head);
      const codegraph::CodeGraph& g = samples[model_rng.Index(samples.size())].graph;
      const int predicted = model.Predict(g);
      explain::ExplainerConfig xc;
      xc.sparsity = 0.05;
      xc.alpha = model_rng.Uniform();
      const Tensor edge_logits =
          Tensor::Randn(static_cast<int>(g.edges.size()), 1, model_rng, 1.0);
      const Tensor feature_logits = Tensor::Randn(g.num_nodes(), small.feature_dim, model_rng, 1.0);
      const testing::ScalarFn by_edges = [&](Tape& tape, Var x) {
        return explain::ObjectiveFromLogits(tape, model, g, x, tape.Constant(feature_logits), xc,
                                            predicted);
      };
      const testing::ScalarFn by_features = [&](Tape& tape, Var x) {
        return explain::ObjectiveFromLogits(tape, model, g, tape.Constant(edge_logits), x, xc,
                                            predicted);
      };
      worst_objective = std::max({worst_objective, testing::GradientError(by_edges, edge_logits, 1e-6),
                                  testing::GradientError(by_features, feature_logits, 1e-6)});
    }
  }
  return {worst_primitive <= kTolerance && worst_loss <= kTolerance &&
              worst_objective <= kTolerance,
          std::to_string(testing::PrimitiveGradCases().size()) + " primitives x 20: max rel err " +
              Fmt(worst_primitive) + "; total loss (gcn+ggnn, every parameter) x 20: " +
              Fmt(worst_loss) + "; explainer objective x 40: " + Fmt(worst_objective)};
}

// 3. Loss oracles.
Outcome LossOracles() {
  Rng rng(99);
  double nce_gap = 0.0, supcon_gap = 0.0, reduction_gap = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Tensor z = testing::UnitRows(4, 6, rng);
    Tape tape;
    const Var zv = tape.Constant(z);
    const training::BatchPlan unlabeled = training::BatchPlan::Unlabeled(2);
    nce_gap = std::max(nce_gap, std::abs(training::NceLoss(zv, unlabeled).value().item() -
                                         testing::NaiveNce(z, unlabeled.temperature)));
    const training::BatchPlan labeled = training::BatchPlan::FromPairLabels(
        {static_cast<int>(rng.UniformInt(0, 1)), static_cast<int>(rng.UniformInt(0, 1))});
    supcon_gap = std::max(supcon_gap, std::abs(training::SupConLoss(zv, labeled).value().item() -
                                               testing::NaiveSupCon(z, labeled)));
    const training::BatchPlan distinct = training::BatchPlan::FromPairLabels({0, 1});
    reduction_gap = std::max(reduction_gap, std::abs(training::SupConLoss(zv, distinct).value().item() -
                                                     training::NceLoss(zv, distinct).value().item()));
  }
  double single = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    Tape tape;
    single = std::max(single, std::abs(training::NceLoss(tape.Constant(testing::UnitRows(2, 6, rng)),
                                                         training::BatchPlan::Unlabeled(1))
                                           .value()
                                           .item()));
  }
  return {nce_gap <= 1e-10 && supcon_gap <= 1e-10 && reduction_gap <= 1e-10 && single == 0.0,
          "100 random N=4 batches: |nce - naive| " + Fmt(nce_gap) + ", |supcon - naive| " +
              Fmt(supcon_gap) + ", |supcon - nce| with partner-only positives " +
              Fmt(reduction_gap) + "; single-pair nce " + Fmt(single)};
}

struct DetectionRun {
  std::vector<training::Sample> test;
  nn::EncoderClassifier coca;
  nn::EncoderClassifier ce;
  double coca_seconds = 0.0;
  double ce_seconds = 0.0;
  int coca_epochs = 0;
};

nn::EncoderConfig DetectionEncoder() {
  nn::EncoderConfig config;
  config.hidden_dim = 64;
  return config;
}

training::TrainConfig DetectionTraining(training::LossMode loss) {
  training::TrainConfig config;
  config.loss = loss;
  config.learning_rate = 1e-3;
  config.max_epochs = 100;
  config.seed = 42;
  return config;
}

DetectionRun TrainDetectors() {
  eval::CorpusSpec spec;
  spec.rng_seed = 42;
  const auto corpus = eval::GenerateCorpus(spec);
  std::vector<training::Sample> samples;
  for (const auto& c : corpus) {
    samples.push_back(training::MakeSample(c.id, minic::ParseSource(c.code), c.label));
  }
  const training::Split split = training::SplitIndices(static_cast<int>(samples.size()), 42);
  const auto train = training::Gather(samples, split.train);
  const auto validation = training::Gather(samples, split.validation);
  const nn::EncoderConfig encoder = DetectionEncoder();
  const auto log_epoch = [](const char* tag) {
    return [tag](const training::EpochRecord& r) {
      if (r.epoch % 10 == 0) {
        Progress(std::string(tag) + " epoch " + std::to_string(r.epoch) + " loss " +
                 Fmt(r.train_loss) + " validation " + Fmt(r.validation_loss));
      }
    };
  };

  Stopwatch coca_clock;
  const training::TrainConfig coca_config = DetectionTraining(training::LossMode::kCoca);
  const training::PretrainResult coca =
      training::PretrainEncoder(train, validation, encoder, coca_config, log_epoch("coca"));
  const training::ClassifierResult head =
      training::TrainClassifier(encoder, coca.encoder, train, validation, coca_config);
  const double coca_seconds = coca_clock.Seconds();

  Stopwatch ce_clock;
  const training::PretrainResult ce = training::PretrainEncoder(
      train, validation, encoder, DetectionTraining(training::LossMode::kCe), log_epoch("ce"));
  const double ce_seconds = ce_clock.Seconds();

  return {training::Gather(samples, split.test),
          nn::EncoderClassifier(encoder, coca.encoder, head.classifier),
          nn::EncoderClassifier(encoder, ce.encoder, ce.classifier),
          coca_seconds,
          ce_seconds,
          static_cast<int>(coca.log.size())};
}

const DetectionRun& Detectors() {
  static const DetectionRun* run = new DetectionRun(TrainDetectors());
  return *run;
}

double TestF1(const nn::EncoderClassifier& model, const std::vector<training::Sample>& test) {
  std::vector<int> predicted, labels;
  for (const auto& s : test) {
    predicted.push_back(model.Predict(s.graph));
    labels.push_back(*s.label);
  }
  return eval::ComputeDetectionMetrics(predicted, labels).f1;
}

// 4. Desk-scale detection.
Outcome DeskScaleDetection() {
  const DetectionRun& run = Detectors();
  const double f1 = TestF1(run.coca, run.test);
  return {f1 >= 0.90 && run.coca_seconds < 1800.0,
          "coca gcn test F1 " + Fmt(f1) + " after " + std::to_string(run.coca_epochs) +
              " encoder epochs, " + Fmt(run.coca_seconds) + " s including the classifier"};
}

// 5. Augmentation consistency, coca vs cross-entropy baseline.
Outcome Robustness() {
  const DetectionRun& run = Detectors();
  const double coca = training::AugmentationConsistency(run.coca, run.test, 42);
  const double ce = training::AugmentationConsistency(run.ce, run.test, 42);
  return {coca >= 0.95 && coca > ce,
          "consistency coca " + Fmt(coca) + ", ce baseline " + Fmt(ce) + " (ce test F1 " +
              Fmt(TestF1(run.ce, run.test)) + ", trained in " + Fmt(run.ce_seconds) + " s)"};
}

struct MotifRun {
  std::vector<eval::MotifGraph> graphs;
  nn::EncoderClassifier model;
  double accuracy = 0.0;
};

MotifRun TrainMotifModel() {
  const eval::MotifSpec spec;
  std::vector<eval::MotifGraph> graphs = eval::GenerateMotifGraphs(200, 42, spec);
  std::vector<training::Sample> samples;
  for (std::size_t k = 0; k < graphs.size(); ++k) {
    samples.push_back({"m" + std::to_string(k), {}, graphs[k].graph, graphs[k].label});
  }
  nn::EncoderConfig encoder;
  encoder.arch = nn::Arch::kGgnn;
  encoder.feature_dim = spec.feature_dim;
  encoder.hidden_dim = 32;
  training::TrainConfig config;
  config.loss = training::LossMode::kCe;
  config.learning_rate = 1e-3;
  config.batch_size = 32;
  config.max_epochs = 100;
  config.patience = 20;
  const training::PretrainResult result = training::PretrainEncoder(samples, {}, encoder, config);
  nn::EncoderClassifier model(encoder, result.encoder, result.classifier);
  int correct = 0;
  for (const auto& g : graphs) correct += model.Predict(g.graph) == g.label;
  const double accuracy = static_cast<double>(correct) / static_cast<double>(graphs.size());
  return {std::move(graphs), std::move(model), accuracy};
}

const MotifRun& MotifModel() {
  static const MotifRun* run = new MotifRun(TrainMotifModel());
  return *run;
}

// 6. Motif recovery against uniformly random masks of equal cardinality.
Outcome MotifRecovery() {
  const MotifRun& run = MotifModel();
  explain::ExplainerConfig config;
  config.sparsity = 0.001;
  config.steps = 500;
  Rng rng(6);
  double iou = 0.0, random_iou = 0.0;
  int n = 0;
  for (std::size_t k = 0; k < run.graphs.size(); ++k) {
    const eval::MotifGraph& m = run.graphs[k];
    if (m.label != 1 || run.model.Predict(m.graph) != 1) continue;
    const explain::ExplanationReport report =
        explain::Explain(run.model, m.graph, config, DeriveSeed(42, k));
    std::vector<codegraph::Edge> kept;
    for (int e : report.kept_edges) kept.push_back(m.graph.edges[e]);
    iou += eval::EdgeIou(kept, m.motif);
    constexpr int kDraws = 20;
    for (int draw = 0; draw < kDraws; ++draw) {
      std::vector<codegraph::Edge> random = m.graph.edges;
      rng.Shuffle(random);
      random.resize(kept.size());
      random_iou += eval::EdgeIou(random, m.motif) / kDraws;
    }
    ++n;
  }
  if (n == 0) return {false, "no correctly detected motif graphs"};
  iou /= n;
  random_iou /= n;
  return {run.accuracy >= 0.95 && iou >= 0.5 && iou >= 3.0 * random_iou,
          "model accuracy " + Fmt(run.accuracy) + "; " + std::to_string(n) +
              " explained graphs, mean edge IoU " + Fmt(iou) + " vs random " + Fmt(random_iou)};
}

// 7. Agreement with the brute-force oracle on tiny graphs.
Outcome OracleConsistency() {
  eval::MotifSpec spec;
  spec.min_nodes = 6;
  spec.max_nodes = 6;
  spec.motif_nodes = 3;
  spec.extra_edge_rate = 0.0;
  spec.feature_dim = 8;
  const auto graphs = eval::GenerateMotifGraphs(300, 7, spec);
  std::vector<training::Sample> samples;
  for (std::size_t k = 0; k < graphs.size(); ++k) {
    samples.push_back({"t" + std::to_string(k), {}, graphs[k].graph, graphs[k].label});
  }
  nn::EncoderConfig encoder;
  encoder.arch = nn::Arch::kGgnn;
  encoder.feature_dim = spec.feature_dim;
  encoder.hidden_dim = 16;
  training::TrainConfig train;
  train.loss = training::LossMode::kCe;
  train.learning_rate = 1e-3;
  train.batch_size = 32;
  train.max_epochs = 30;
  train.patience = 20;
  const training::PretrainResult result = training::PretrainEncoder(samples, {}, encoder, train);
  const nn::EncoderClassifier model(encoder, result.encoder, result.classifier);

  explain::ExplainerConfig config;
  config.sparsity = 0.001;
  config.steps = 500;
  config.mask_features = false;
  int n = 0, both = 0, concise = 0, max_edges = 0;
  double size = 0.0, oracle_size = 0.0;
  for (std::size_t k = 0; k < graphs.size() && n < 50; ++k) {
    const codegraph::CodeGraph& g = graphs[k].graph;
    if (g.edges.size() > 8 || model.Predict(g) != 1) continue;
    const explain::BruteForceResult oracle = explain::BruteForceExplain(model, g, 8);
    if (!oracle.feasible) continue;
    ++n;
    max_edges = std::max(max_edges, static_cast<int>(g.edges.size()));
    const explain::ExplanationReport report =
        explain::Explain(model, g, config, DeriveSeed(7, k));
    const explain::EdgeSetChecks checks = explain::CheckEdgeSet(model, g, report.kept_edges, 1);
    const bool ok = checks.factual && checks.counterfactual;
    both += ok;
    concise += ok && report.kept_edges.size() <= oracle.edges.size() + 1;
    size += static_cast<double>(report.kept_edges.size());
    oracle_size += static_cast<double>(oracle.edges.size());
  }
  if (n < 50) return {false, "only " + std::to_string(n) + " feasible tiny instances"};
  return {concise >= 45,
          std::to_string(n) + " instances (<= " + std::to_string(max_edges) + " edges): " +
              std::to_string(both) + " satisfy both conditions, " + std::to_string(concise) +
              " also within oracle + 1; mean size " + Fmt(size / n) + " vs oracle " +
              Fmt(oracle_size / n)};
}

// 8. Explanation size against alpha and explainer mode.
Outcome AlphaTrend() {
  const MotifRun& run = MotifModel();
  const auto mean_size = [&](explain::ExplainMode mode, double alpha) {
    explain::ExplainerConfig config;
    config.sparsity = 0.001;
    config.steps = 300;
    config.init_jitter = 0.1;
    config.mode = mode;
    config.alpha = alpha;
    double total = 0.0;
    int n = 0;
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      int count = 0;
      for (std::size_t k = 0; k < run.graphs.size() && count < 20; ++k) {
        const eval::MotifGraph& m = run.graphs[k];
        if (m.label != 1 || run.model.Predict(m.graph) != 1) continue;
        ++count;
        ++n;
        total += static_cast<double>(
            explain::Explain(run.model, m.graph, config, DeriveSeed(seed, k)).statements.size());
      }
    }
    return n == 60 ? total / n : -1.0;
  };
  const double low = mean_size(explain::ExplainMode::kDual, 0.1);
  const double mid = mean_size(explain::ExplainMode::kDual, 0.5);
  const double high = mean_size(explain::ExplainMode::kDual, 0.9);
  const double factual = mean_size(explain::ExplainMode::kFactualOnly, 0.5);
  const double counterfactual = mean_size(explain::ExplainMode::kCounterfactualOnly, 0.5);
  return {low >= 0 && low <= mid && mid <= high && counterfactual <= factual,
          "mean |S_e| over 20 graphs x 3 seeds: alpha 0.1 " + Fmt(low) + ", 0.5 " + Fmt(mid) +
              ", 0.9 " + Fmt(high) + "; factual-only " + Fmt(factual) + ", counterfactual-only " +
              Fmt(counterfactual)};
}

// 9. Statement metrics on exact cases.
Outcome MetricExactness() {
  const eval::StatementScores anchored = eval::ScoreStatements({1, 2, 3, 4, 5}, {2, 3, 4});
  const eval::StatementScores equal = eval::ScoreStatements({3, 8, 9}, {3, 8, 9});
  const eval::StatementScores disjoint = eval::ScoreStatements({1, 2}, {5, 6});
  const bool pass = anchored.precision == 0.6 && anchored.recall == 1.0 && anchored.iou == 0.6 &&
                    equal.precision == 1.0 && equal.recall == 1.0 && equal.iou == 1.0 &&
                    disjoint.precision == 0.0 && disjoint.recall == 0.0 && disjoint.iou == 0.0;
  return {pass, "5 explained / 3 true / 3 shared: SP " + Fmt(anchored.precision) + " SR " +
                    Fmt(anchored.recall) + " IoU " + Fmt(anchored.iou) + "; equal IoU " +
                    Fmt(equal.iou) + "; disjoint IoU " + Fmt(disjoint.iou)};
}

// 10. The CLI pipeline, run twice from scratch, yields identical metrics.
Outcome CliDeterminism() {
  const fs::path root = fs::temp_directory_path() / "vulnlens_acceptance_cli";
  fs::remove_all(root);
  const std::string config =
      "corpus.n_samples = 400\nencoder.hidden_dim = 32\ntrain.batch_size = 64\n"
      "train.learning_rate = 1e-3\ntrain.max_epochs = 30\nexplain.steps = 100\n"
      "explain.sparsity = 0.001\n";
  std::vector<std::string> summaries;
  for (const char* run : {"a", "b"}) {
    const fs::path dir = root / run;
    fs::create_directories(dir);
    WriteFileAtomic((dir / "run.cfg").string(), config);
    const std::string cli = std::string(VULNLENS_CLI_PATH) + " --config " +
                            (dir / "run.cfg").string() + " --seed 42 ";
    const auto at = [&](const char* name) { return (dir / name).string(); };
    const std::vector<std::string> commands = {
        "gen-corpus --out " + at("data.jsonl"),
        "augment --in " + at("data.jsonl") + " --out " + at("pairs.jsonl"),
        "build-graphs --in " + at("data.jsonl") + " --out " + at("graphs.jsonl"),
        "pretrain --in " + at("graphs.jsonl") + " --out " + at("encoder.ckpt"),
        "train-classifier --in " + at("graphs.jsonl") + " --encoder " + at("encoder.ckpt") +
            " --out " + at("model.ckpt"),
        "detect --in " + at("graphs.jsonl") + " --model " + at("model.ckpt") + " --out " +
            at("predictions.jsonl"),
        "explain --in " + at("graphs.jsonl") + " --model " + at("model.ckpt") + " --out " +
            at("explanations.jsonl"),
        "evaluate --in " + at("predictions.jsonl") + " --explanations " +
            at("explanations.jsonl") + " --out " + at("metrics.jsonl"),
    };
    for (const std::string& command : commands) {
      const std::string line = cli + command + " 2>> " + at("stderr.txt");
      if (std::system(line.c_str()) != 0) {
        return {false, "command failed: " + command + "\n" + ReadFile(at("stderr.txt"))};
      }
    }
    summaries.push_back(ReadFile(at("metrics.jsonl")));
  }
  const std::vector<std::string> lines = SplitLines(summaries[0]);
  const std::string summary = lines.size() > 1 ? lines[1] : "";
  fs::remove_all(root);
  return {summaries[0] == summaries[1] && !summary.empty(),
          std::string(summaries[0] == summaries[1] ? "metrics files byte-identical" : "metrics differ") +
              "; summary " + summary};
}

}  // namespace
}  // namespace vulnlens

int main(int argc, char** argv) {
  using vulnlens::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"transformation equivalence", vulnlens::TransformEquivalence},
      {"gradient integrity", vulnlens::GradientIntegrity},
      {"loss oracles", vulnlens::LossOracles},
      {"desk-scale detection", vulnlens::DeskScaleDetection},
      {"augmentation robustness", vulnlens::Robustness},
      {"motif recovery", vulnlens::MotifRecovery},
      {"oracle consistency", vulnlens::OracleConsistency},
      {"alpha trade-off trend", vulnlens::AlphaTrend},
      {"metric exactness", vulnlens::MetricExactness},
      {"pipeline determinism", vulnlens::CliDeterminism},
  };
  std::set<int> selected;
  std::string report_path;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--report" && i + 1 < argc) {
      report_path = argv[++i];
    } else {
      selected.insert(std::atoi(argv[i]));
    }
  }
  std::ostringstream report;
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int number = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(number)) continue;
    vulnlens::Stopwatch clock;
    Outcome outcome;
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failures += !outcome.pass;
    std::ostringstream line;
    line << "CRITERION " << number << " " << (outcome.pass ? "PASS" : "FAIL") << " ["
         << criteria[i].first << "] " << outcome.detail << " (" << vulnlens::Fmt(clock.Seconds())
         << " s)\n";
    std::cout << line.str() << std::flush;
    report << line.str();
  }
  const std::string verdict =
      failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAIL";
  std::cout << verdict << std::endl;
  report << verdict << "\n";
  if (!report_path.empty()) std::ofstream(report_path) << report.str();
  return failures == 0 ? 0 : 1;
}
