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

// Command-line driver for the detection and explanation pipeline.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "vulnlens/common/error.h"
#include "vulnlens/common/io.h"
#include "vulnlens/pipeline/config.h"
#include "vulnlens/pipeline/stages.h"

namespace {

using vulnlens::pipeline::RunConfig;

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string in;
  std::string out;
  std::string encoder;
  std::string model;
  std::string explanations;
  std::string mode;
  std::string loss;
};

RunConfig EffectiveConfig(const Flags& flags) {
  RunConfig config;
  if (!flags.config.empty()) {
    config = vulnlens::pipeline::ParseRunConfig(vulnlens::ReadFile(flags.config));
  }
  if (flags.seed) config.seed = *flags.seed;
  if (!flags.mode.empty()) vulnlens::pipeline::SetConfigValue(config, "explain.mode", flags.mode);
  if (!flags.loss.empty()) vulnlens::pipeline::SetConfigValue(config, "train.loss", flags.loss);
  config.Validate();
  return config;
}

void PrintError(const std::string& kind, const std::string& message) {
  std::cerr << nlohmann::json({{"kind", "error"}, {"error", kind}, {"message", message}}).dump()
            << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Contrastive vulnerability detection with dual-view explanations"};
  app.require_subcommand(1);
  Flags flags;
  app.add_option("--config", flags.config, "key = value configuration file");
  app.add_option("--seed", flags.seed, "global seed, overrides the configuration");

  auto* gen = app.add_subcommand("gen-corpus", "generate the synthetic MiniC corpus");
  gen->add_option("--out", flags.out, "dataset file")->required();

  auto* augment = app.add_subcommand("augment", "emit original/variant pairs");
  augment->add_option("--in", flags.in, "dataset file")->required();
  augment->add_option("--out", flags.out, "pairs file")->required();

  auto* graphs = app.add_subcommand("build-graphs", "build code graphs for a dataset");
  graphs->add_option("--in", flags.in, "dataset file")->required();
  graphs->add_option("--out", flags.out, "graphs file")->required();

  auto* pretrain = app.add_subcommand("pretrain", "train the encoder");
  pretrain->add_option("--in", flags.in, "graphs file")->required();
  pretrain->add_option("--out", flags.out, "encoder checkpoint")->required();
  pretrain->add_option("--loss", flags.loss, "coca, ce, nce or infonce")
      ->check(CLI::IsMember({"coca", "ce", "nce", "infonce"}));

  auto* classifier = app.add_subcommand("train-classifier", "fit the classifier head");
  classifier->add_option("--in", flags.in, "graphs file")->required();
  classifier->add_option("--encoder", flags.encoder, "encoder checkpoint")->required();
  classifier->add_option("--out", flags.out, "model checkpoint")->required();
  classifier->add_option("--loss", flags.loss, "coca, ce, nce or infonce")
      ->check(CLI::IsMember({"coca", "ce", "nce", "infonce"}));

  auto* detect = app.add_subcommand("detect", "predict every record");
  detect->add_option("--in", flags.in, "graphs file")->required();
  detect->add_option("--model", flags.model, "model checkpoint")->required();
  detect->add_option("--out", flags.out, "predictions file")->required();

  auto* explain = app.add_subcommand("explain", "explain records predicted vulnerable");
  explain->add_option("--in", flags.in, "graphs file")->required();
  explain->add_option("--model", flags.model, "model checkpoint")->required();
  explain->add_option("--out", flags.out, "explanations file")->required();
  explain->add_option("--mode", flags.mode, "dual, factual-only or counterfactual-only")
      ->check(CLI::IsMember({"dual", "factual-only", "counterfactual-only"}));

  auto* evaluate = app.add_subcommand("evaluate", "score predictions and explanations");
  evaluate->add_option("--in", flags.in, "predictions file")->required();
  evaluate->add_option("--explanations", flags.explanations, "explanations file")->required();
  evaluate->add_option("--out", flags.out, "metrics file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    PrintError("UsageError", e.what());
    return 2;
  }

  try {
    const RunConfig config = EffectiveConfig(flags);
    std::ostream& log = std::cerr;
    if (*gen) {
      vulnlens::pipeline::GenCorpusStage(config, flags.out, log);
    } else if (*augment) {
      vulnlens::pipeline::AugmentStage(config, flags.in, flags.out, log);
    } else if (*graphs) {
      vulnlens::pipeline::BuildGraphsStage(config, flags.in, flags.out, log);
    } else if (*pretrain) {
      vulnlens::pipeline::PretrainStage(config, flags.in, flags.out, log);
    } else if (*classifier) {
      vulnlens::pipeline::TrainClassifierStage(config, flags.in, flags.encoder, flags.out, log);
    } else if (*detect) {
      vulnlens::pipeline::DetectStage(config, flags.in, flags.model, flags.out, log);
    } else if (*explain) {
      vulnlens::pipeline::ExplainStage(config, flags.in, flags.model, flags.out, log);
    } else if (*evaluate) {
      vulnlens::pipeline::EvaluateStage(config, flags.in, flags.explanations, flags.out, log);
    }
  } catch (const vulnlens::Error& e) {
    PrintError(e.kind(), e.what());
    return 1;
  } catch (const std::exception& e) {
    PrintError("InternalError", e.what());
    return 1;
  }
  return 0;
}
