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
#include <map>
#include <string>
#include <string_view>

#include "vulnlens/eval/corpus.h"
#include "vulnlens/explain/explainer.h"
#include "vulnlens/nn/model.h"
#include "vulnlens/training/trainer.h"

namespace vulnlens::pipeline {

// Every tunable of the pipeline. The global seed drives the corpus, the
// split, training and the per-record seeds.
struct RunConfig {
  std::uint64_t seed = 42;
  eval::CorpusSpec corpus;
  nn::EncoderConfig encoder;
  training::TrainConfig train;
  explain::ExplainerConfig explainer;
  // Split scored by `explain` and `evaluate`: train, validation, test or all.
  std::string eval_split = "test";

  // Copies with the global seed filled in.
  eval::CorpusSpec CorpusSpecWithSeed() const;
  training::TrainConfig TrainConfigWithSeed() const;

  // Throws ConfigError.
  void Validate() const;
};

// Canonical key/value view, ordered by key.
std::map<std::string, std::string> ConfigEntries(const RunConfig& config);

// Sets one key; ConfigError for an unknown key or a malformed value.
void SetConfigValue(RunConfig& config, std::string_view key, std::string_view value);

// Parses `key = value` lines over the defaults. Blank lines and lines
// starting with '#' are ignored. The result is validated.
RunConfig ParseRunConfig(std::string_view text);

// Inverse of ParseRunConfig.
std::string RunConfigToText(const RunConfig& config);

}  // namespace vulnlens::pipeline
