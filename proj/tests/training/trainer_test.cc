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

#include <gtest/gtest.h>

#include <cmath>

#include "support/gradcheck.h"
#include "vulnlens/common/error.h"
#include "vulnlens/common/rng.h"
#include "vulnlens/eval/corpus.h"
#include "vulnlens/eval/metrics.h"
#include "vulnlens/minic/parser.h"
#include "vulnlens/tensor/ops.h"
#include "vulnlens/training/losses.h"

namespace vulnlens::training {
namespace {

using tensor::ParamSet;
using tensor::Tape;
using tensor::Tensor;
using tensor::Var;

nn::EncoderConfig SmallEncoder(nn::Arch arch) {
  nn::EncoderConfig config;
  config.arch = arch;
  config.feature_dim = 16;
  config.hidden_dim = 8;
  return config;
}

std::vector<Sample> CorpusSamples(int n, std::uint64_t seed, int feature_dim) {
  eval::CorpusSpec spec;
  spec.n_samples = n;
  spec.rng_seed = seed;
  std::vector<Sample> samples;
  for (const auto& c : eval::GenerateCorpus(spec)) {
    samples.push_back(MakeSample(c.id, minic::ParseSource(c.code), c.label, feature_dim));
  }
  return samples;
}

double MeanCosine(const nn::EncoderConfig& config, const ParamSet& encoder,
                  const std::vector<Sample>& samples, std::uint64_t seed) {
  double total = 0.0;
  for (const Sample& s : samples) {
    const Sample variant = AugmentSample(s, DeriveSeed(seed, s.id), 0.5, config.feature_dim);
    const Tensor a = nn::EmbedGraph(config, encoder, s.graph);
    const Tensor b = nn::EmbedGraph(config, encoder, variant.graph);
    total += tensor::Dot(a, b) / std::sqrt(tensor::SquaredNorm(a) * tensor::SquaredNorm(b) + 1e-300);
  }
  return total / static_cast<double>(samples.size());
}

class ProjectedLossGradientTest : public ::testing::TestWithParam<nn::Arch> {};

// Total loss through projection and encoder, differentiated with respect to
// the input projection and one propagation weight.
TEST_P(ProjectedLossGradientTest, MatchesFiniteDifferences) {
  const nn::EncoderConfig config = SmallEncoder(GetParam());
  const std::vector<Sample> corpus = CorpusSamples(20, 3, config.feature_dim);
  const std::string inner =
      GetParam() == nn::Arch::kGcn ? std::string("enc.gcn.1.w") : std::string("enc.ggnn.z.w");
  for (int instance = 0; instance < 20; ++instance) {
    Rng rng(instance);
    ParamSet params = nn::InitEncoder(config, rng);
    for (auto& [name, t] : nn::InitProjection(config, rng)) params[name] = t;
    std::vector<Sample> views;
    std::vector<std::optional<int>> labels;
    for (int k = 0; k < 3; ++k) {
      const Sample& s = corpus[rng.Index(corpus.size())];
      views.push_back(s);
      views.push_back(AugmentSample(s, rng.NextU64(), 0.5, config.feature_dim));
      labels.push_back(s.label);
    }
    labels[0] = 0;
    labels[1] = 1;
    BatchPlan plan = BatchPlan::FromPairLabels(labels);
    plan.temperature = 0.5;
    for (const std::string& target : {std::string("enc.w_in"), inner}) {
      const testing::ScalarFn fn = [&](Tape& tape, Var w) {
        nn::BoundParams bound = nn::Bind(tape, params, false);
        bound.insert_or_assign(target, w);
        std::vector<Var> h;
        for (const Sample& s : views) h.push_back(nn::Encode(tape, bound, config, s.graph));
        return TotalLoss(nn::Project(bound, tensor::ConcatRows(h)), plan);
      };
      // A small step keeps the differences clear of relu kinks.
      EXPECT_LE(testing::GradientError(fn, params.at(target), 1e-6), 1e-4)
          << target << " instance " << instance;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Archs, ProjectedLossGradientTest,
                         ::testing::Values(nn::Arch::kGcn, nn::Arch::kGgnn),
                         [](const auto& info) { return std::string(nn::ArchName(info.param)); });

TEST(SplitIndicesTest, EightyTenTenAndDisjoint) {
  const Split split = SplitIndices(2000, 42);
  EXPECT_EQ(1600u, split.train.size());
  EXPECT_EQ(200u, split.validation.size());
  EXPECT_EQ(200u, split.test.size());
  std::vector<int> all = split.train;
  all.insert(all.end(), split.validation.begin(), split.validation.end());
  all.insert(all.end(), split.test.begin(), split.test.end());
  std::sort(all.begin(), all.end());
  for (int i = 0; i < 2000; ++i) EXPECT_EQ(i, all[i]);
  EXPECT_EQ(split.test, SplitIndices(2000, 42).test);
  EXPECT_NE(split.test, SplitIndices(2000, 43).test);
}

TEST(TrainConfigTest, Validation) {
  TrainConfig config;
  EXPECT_NO_THROW(config.Validate());
  config.batch_size = 7;
  EXPECT_THROW(config.Validate(), ConfigError);
  config = {};
  config.labeled_fraction = 0.0;
  EXPECT_THROW(config.Validate(), ConfigError);
  config = {};
  config.learning_rate = -1.0;
  EXPECT_THROW(config.Validate(), ConfigError);
  EXPECT_EQ(LossMode::kInfoNce, ParseLossMode("infonce"));
  EXPECT_THROW(ParseLossMode("triplet"), ConfigError);
}

TrainConfig FastConfig() {
  TrainConfig config;
  config.batch_size = 8;
  config.learning_rate = 1e-2;
  config.max_epochs = 1;
  config.seed = 5;
  return config;
}

TEST(PretrainTest, OneEpochReducesLossOnSmallCorpus) {
  const nn::EncoderConfig encoder = SmallEncoder(nn::Arch::kGcn);
  const std::vector<Sample> corpus = CorpusSamples(10, 1, encoder.feature_dim);
  const std::vector<Sample> train(corpus.begin(), corpus.begin() + 8);
  // One full-corpus batch whose views and labelled subset match the monitored
  // loss exactly.
  TrainConfig config = FastConfig();
  config.batch_size = 16;
  config.augment_probability = 0.0;
  config.labeled_fraction = 1.0;
  config.learning_rate = 1e-3;
  const PretrainResult result = PretrainEncoder(train, {}, encoder, config);
  ASSERT_EQ(1u, result.log.size());
  EXPECT_LT(result.log[0].validation_loss, result.initial_loss);
  EXPECT_EQ(1, result.best_epoch);
  EXPECT_TRUE(result.classifier.empty());
  for (const auto& [name, t] : result.encoder) EXPECT_TRUE(name.starts_with("enc.")) << name;
}

TEST(PretrainTest, FixedSeedIsBitIdentical) {
  const nn::EncoderConfig encoder = SmallEncoder(nn::Arch::kGgnn);
  const std::vector<Sample> corpus = CorpusSamples(12, 2, encoder.feature_dim);
  TrainConfig config = FastConfig();
  config.max_epochs = 2;
  const std::vector<Sample> train(corpus.begin(), corpus.begin() + 10);
  const std::vector<Sample> validation(corpus.begin() + 10, corpus.end());
  const PretrainResult a = PretrainEncoder(train, validation, encoder, config);
  const PretrainResult b = PretrainEncoder(train, validation, encoder, config);
  ASSERT_EQ(a.encoder.size(), b.encoder.size());
  for (const auto& [name, t] : a.encoder) EXPECT_EQ(t.data(), b.encoder.at(name).data()) << name;
}

TEST(PretrainTest, AugmentedViewsMoveCloser) {
  const nn::EncoderConfig encoder = SmallEncoder(nn::Arch::kGcn);
  const std::vector<Sample> corpus = CorpusSamples(60, 4, encoder.feature_dim);
  const std::vector<Sample> train(corpus.begin(), corpus.begin() + 40);
  const std::vector<Sample> held_out(corpus.begin() + 40, corpus.end());
  TrainConfig config = FastConfig();
  config.batch_size = 16;
  config.max_epochs = 10;
  config.loss = LossMode::kNce;
  Rng init(DeriveSeed(config.seed, "init"));
  const ParamSet initial = nn::InitEncoder(encoder, init);
  const PretrainResult result = PretrainEncoder(train, held_out, encoder, config);
  EXPECT_GT(MeanCosine(encoder, result.encoder, held_out, 77),
            MeanCosine(encoder, initial, held_out, 77));
}

TEST(PretrainTest, BatchShrinksToCorpusAndEmptyCorpusFails) {
  const nn::EncoderConfig encoder = SmallEncoder(nn::Arch::kGcn);
  const std::vector<Sample> corpus = CorpusSamples(10, 1, encoder.feature_dim);
  TrainConfig config = FastConfig();
  config.batch_size = 256;
  const PretrainResult result = PretrainEncoder(corpus, {}, encoder, config);
  ASSERT_EQ(1u, result.diagnostics.size());
  EXPECT_NE(std::string::npos, result.diagnostics[0].find("shrunk"));
  EXPECT_THROW(PretrainEncoder({}, {}, encoder, config), DataError);
}

TEST(PretrainTest, AllLossModesRun) {
  const nn::EncoderConfig encoder = SmallEncoder(nn::Arch::kGcn);
  const std::vector<Sample> corpus = CorpusSamples(10, 6, encoder.feature_dim);
  for (LossMode mode : {LossMode::kCoca, LossMode::kNce, LossMode::kInfoNce, LossMode::kCe}) {
    TrainConfig config = FastConfig();
    config.loss = mode;
    const PretrainResult result = PretrainEncoder(corpus, {}, encoder, config);
    EXPECT_TRUE(std::isfinite(result.log.at(0).train_loss)) << LossModeName(mode);
    EXPECT_EQ(mode == LossMode::kCe, !result.classifier.empty());
  }
}

// Two distinct graphs, each repeated: their embeddings are separable points.
std::vector<Sample> TwoPointCorpus(int feature_dim) {
  std::vector<Sample> samples;
  for (int k = 0; k < 20; ++k) {
    const int label = k % 2;
    const std::string code =
        label ? "int f(int n){ int a[4]; int i = read_int(); a[i] = n; return 0; }"
              : "int f(int n){ int s = n + 1; print_int(s); return s; }";
    samples.push_back(MakeSample("r" + std::to_string(k), minic::ParseSource(code), label,
                                 feature_dim));
  }
  return samples;
}

TEST(TrainClassifierTest, SeparableEmbeddingsReachFullTrainingAccuracy) {
  const nn::EncoderConfig encoder_config = SmallEncoder(nn::Arch::kGcn);
  Rng rng(3);
  const ParamSet encoder = nn::InitEncoder(encoder_config, rng);
  const ParamSet before = encoder;
  const std::vector<Sample> samples = TwoPointCorpus(encoder_config.feature_dim);
  TrainConfig config = FastConfig();
  config.max_epochs = 200;
  config.patience = 200;
  const ClassifierResult result = TrainClassifier(encoder_config, encoder, samples, {}, config);
  nn::EncoderClassifier model(encoder_config, encoder, result.classifier);
  for (const Sample& s : samples) EXPECT_EQ(*s.label, Predict(model, s.graph).label);
  for (const auto& [name, t] : before) EXPECT_EQ(t.data(), encoder.at(name).data());

  const ClassifierResult again = TrainClassifier(encoder_config, encoder, samples, {}, config);
  for (const auto& [name, t] : result.classifier) {
    EXPECT_EQ(t.data(), again.classifier.at(name).data());
  }
}

TEST(TrainClassifierTest, MissingClassOrLabelIsRejected) {
  const nn::EncoderConfig encoder_config = SmallEncoder(nn::Arch::kGcn);
  Rng rng(3);
  const ParamSet encoder = nn::InitEncoder(encoder_config, rng);
  std::vector<Sample> samples = TwoPointCorpus(encoder_config.feature_dim);
  std::vector<Sample> benign_only;
  for (const Sample& s : samples) {
    if (*s.label == 0) benign_only.push_back(s);
  }
  EXPECT_THROW(TrainClassifier(encoder_config, encoder, benign_only, {}, FastConfig()), DataError);
  samples[3].label.reset();
  EXPECT_THROW(TrainClassifier(encoder_config, encoder, samples, {}, FastConfig()), DataError);
}

TEST(DetectTest, EndToEndOnSmallCorpus) {
  nn::EncoderConfig encoder;
  encoder.hidden_dim = 32;
  const std::vector<Sample> corpus = CorpusSamples(400, 9, encoder.feature_dim);
  const Split split = SplitIndices(static_cast<int>(corpus.size()), 9);
  const auto train = Gather(corpus, split.train);
  const auto validation = Gather(corpus, split.validation);
  TrainConfig config = FastConfig();
  config.batch_size = 16;
  config.learning_rate = 2e-3;
  config.max_epochs = 40;
  config.loss = LossMode::kCe;
  const PretrainResult pre = PretrainEncoder(train, validation, encoder, config);
  const ClassifierResult cls = TrainClassifier(encoder, pre.encoder, train, validation, config);
  const nn::EncoderClassifier model(encoder, pre.encoder, cls.classifier);

  std::vector<int> predicted, labels;
  for (const Sample& s : Gather(corpus, split.test)) {
    predicted.push_back(Predict(model, s.graph).label);
    labels.push_back(*s.label);
  }
  EXPECT_GE(eval::ComputeDetectionMetrics(predicted, labels).f1, 0.8);

  const std::string benign = "int f(int n) {\n  int a[8];\n  int s = 1;\n  a[4] = s + n;\n"
                             "  print_int(s);\n  return s;\n}\n";
  const Prediction p = Detect(benign, model);
  EXPECT_EQ(0, p.label);
  EXPECT_GT(p.probabilities(0, 0), 0.5);
  const Prediction again = Detect(benign, model);
  EXPECT_EQ(p.probabilities.data(), again.probabilities.data());
  EXPECT_EQ(p.embedding.data(), again.embedding.data());
  EXPECT_THROW(Detect("int f( { return; }", model), ParseError);

  const double consistency = AugmentationConsistency(model, Gather(corpus, split.test), 1);
  EXPECT_GE(consistency, 0.0);
  EXPECT_LE(consistency, 1.0);
}

}  // namespace
}  // namespace vulnlens::training
