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

#include "vulnlens/pipeline/config.h"

#include <charconv>
#include <cstdlib>
#include <functional>

#include "vulnlens/common/error.h"
#include "vulnlens/common/io.h"

namespace vulnlens::pipeline {

namespace {

std::string Trim(std::string_view text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return "";
  const auto end = text.find_last_not_of(" \t\r");
  return std::string(text.substr(begin, end - begin + 1));
}

template <typename Int>
Int ParseInt(std::string_view key, std::string_view value) {
  Int out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) {
    throw ConfigError("key '" + std::string(key) + "' expects an integer, got '" +
                      std::string(value) + "'");
  }
  return out;
}

double ParseDouble(std::string_view key, std::string_view value) {
  const std::string text(value);
  char* end = nullptr;
  const double out = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw ConfigError("key '" + std::string(key) + "' expects a number, got '" + text + "'");
  }
  return out;
}

bool ParseBool(std::string_view key, std::string_view value) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw ConfigError("key '" + std::string(key) + "' expects true or false, got '" +
                    std::string(value) + "'");
}

// Shortest text that parses back to the same double.
std::string FormatDouble(double v) {
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
  return std::string(buffer, end);
}

std::string EdgeTypesToText(const std::vector<codegraph::EdgeType>& types) {
  std::string out;
  for (std::size_t i = 0; i < types.size(); ++i) {
    if (i > 0) out += ",";
    out += codegraph::EdgeTypeName(types[i]);
  }
  return out;
}

std::vector<codegraph::EdgeType> ParseEdgeTypes(std::string_view value) {
  std::vector<codegraph::EdgeType> types;
  std::size_t start = 0;
  while (start <= value.size()) {
    const std::size_t comma = std::min(value.find(',', start), value.size());
    const std::string name = Trim(value.substr(start, comma - start));
    try {
      types.push_back(codegraph::ParseEdgeType(name));
    } catch (const Error&) {
      throw ConfigError("unknown edge type '" + name + "'");
    }
    start = comma + 1;
  }
  return types;
}

struct Field {
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, std::string_view key, std::string_view value)> set;
};

#define VULNLENS_INT_FIELD(member)                                                  \
  Field {                                                                           \
    [](const RunConfig& c) { return std::to_string(c.member); },                   \
        [](RunConfig& c, std::string_view k, std::string_view v) {                  \
          c.member = ParseInt<decltype(c.member)>(k, v);                             \
        }                                                                           \
  }
#define VULNLENS_DOUBLE_FIELD(member)                                               \
  Field {                                                                           \
    [](const RunConfig& c) { return FormatDouble(c.member); },                     \
        [](RunConfig& c, std::string_view k, std::string_view v) {                  \
          c.member = ParseDouble(k, v);                                              \
        }                                                                           \
  }

const std::map<std::string, Field, std::less<>>& Fields() {
  static const auto* fields = new std::map<std::string, Field, std::less<>>{
      {"seed", VULNLENS_INT_FIELD(seed)},
      {"corpus.n_samples", VULNLENS_INT_FIELD(corpus.n_samples)},
      {"corpus.vulnerable_ratio", VULNLENS_DOUBLE_FIELD(corpus.vulnerable_ratio)},
      {"corpus.min_distractors", VULNLENS_INT_FIELD(corpus.min_distractors)},
      {"corpus.max_distractors", VULNLENS_INT_FIELD(corpus.max_distractors)},
      {"encoder.arch",
       {[](const RunConfig& c) { return std::string(nn::ArchName(c.encoder.arch)); },
        [](RunConfig& c, std::string_view, std::string_view v) {
          c.encoder.arch = nn::ParseArch(v);
        }}},
      {"encoder.feature_dim", VULNLENS_INT_FIELD(encoder.feature_dim)},
      {"encoder.hidden_dim", VULNLENS_INT_FIELD(encoder.hidden_dim)},
      {"encoder.layers", VULNLENS_INT_FIELD(encoder.layers)},
      {"encoder.edge_types",
       {[](const RunConfig& c) { return EdgeTypesToText(c.encoder.edge_types); },
        [](RunConfig& c, std::string_view, std::string_view v) {
          c.encoder.edge_types = ParseEdgeTypes(v);
        }}},
      {"encoder.readout",
       {[](const RunConfig& c) { return std::string(nn::ReadoutName(c.encoder.readout)); },
        [](RunConfig& c, std::string_view, std::string_view v) {
          c.encoder.readout = nn::ParseReadout(v);
        }}},
      {"train.batch_size", VULNLENS_INT_FIELD(train.batch_size)},
      {"train.learning_rate", VULNLENS_DOUBLE_FIELD(train.learning_rate)},
      {"train.classifier_learning_rate", VULNLENS_DOUBLE_FIELD(train.classifier_learning_rate)},
      {"train.max_epochs", VULNLENS_INT_FIELD(train.max_epochs)},
      {"train.patience", VULNLENS_INT_FIELD(train.patience)},
      {"train.labeled_fraction", VULNLENS_DOUBLE_FIELD(train.labeled_fraction)},
      {"train.temperature", VULNLENS_DOUBLE_FIELD(train.temperature)},
      {"train.lambda", VULNLENS_DOUBLE_FIELD(train.lambda)},
      {"train.augment_probability", VULNLENS_DOUBLE_FIELD(train.augment_probability)},
      {"train.loss",
       {[](const RunConfig& c) { return std::string(training::LossModeName(c.train.loss)); },
        [](RunConfig& c, std::string_view, std::string_view v) {
          c.train.loss = training::ParseLossMode(v);
        }}},
      {"explain.alpha", VULNLENS_DOUBLE_FIELD(explainer.alpha)},
      {"explain.steps", VULNLENS_INT_FIELD(explainer.steps)},
      {"explain.learning_rate", VULNLENS_DOUBLE_FIELD(explainer.learning_rate)},
      {"explain.threshold", VULNLENS_DOUBLE_FIELD(explainer.threshold)},
      {"explain.mode",
       {[](const RunConfig& c) {
          return std::string(explain::ExplainModeName(c.explainer.mode));
        },
        [](RunConfig& c, std::string_view, std::string_view v) {
          c.explainer.mode = explain::ParseExplainMode(v);
        }}},
      {"explain.sparsity", VULNLENS_DOUBLE_FIELD(explainer.sparsity)},
      {"explain.mask_features",
       {[](const RunConfig& c) { return std::string(c.explainer.mask_features ? "true" : "false"); },
        [](RunConfig& c, std::string_view k, std::string_view v) {
          c.explainer.mask_features = ParseBool(k, v);
        }}},
      {"explain.top_k", VULNLENS_INT_FIELD(explainer.top_k)},
      {"explain.init_jitter", VULNLENS_DOUBLE_FIELD(explainer.init_jitter)},
      {"eval.split",
       {[](const RunConfig& c) { return c.eval_split; },
        [](RunConfig& c, std::string_view, std::string_view v) { c.eval_split = v; }}},
  };
  return *fields;
}

#undef VULNLENS_INT_FIELD
#undef VULNLENS_DOUBLE_FIELD

}  // namespace

eval::CorpusSpec RunConfig::CorpusSpecWithSeed() const {
  eval::CorpusSpec spec = corpus;
  spec.rng_seed = seed;
  return spec;
}

training::TrainConfig RunConfig::TrainConfigWithSeed() const {
  training::TrainConfig out = train;
  out.seed = seed;
  return out;
}

void RunConfig::Validate() const {
  CorpusSpecWithSeed().Validate();
  encoder.Validate();
  TrainConfigWithSeed().Validate();
  explainer.Validate();
  if (eval_split != "train" && eval_split != "validation" && eval_split != "test" &&
      eval_split != "all") {
    throw ConfigError("eval.split must be train, validation, test or all");
  }
}

std::map<std::string, std::string> ConfigEntries(const RunConfig& config) {
  std::map<std::string, std::string> entries;
  for (const auto& [key, field] : Fields()) entries[key] = field.get(config);
  return entries;
}

void SetConfigValue(RunConfig& config, std::string_view key, std::string_view value) {
  const auto it = Fields().find(key);
  if (it == Fields().end()) throw ConfigError("unknown config key '" + std::string(key) + "'");
  it->second.set(config, key, value);
}

RunConfig ParseRunConfig(std::string_view text) {
  RunConfig config;
  int line_number = 0;
  for (const std::string& raw : SplitLines(text)) {
    ++line_number;
    const std::string line = Trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_number) + ": expected key = value");
    }
    SetConfigValue(config, Trim(std::string_view(line).substr(0, eq)),
                   Trim(std::string_view(line).substr(eq + 1)));
  }
  config.Validate();
  return config;
}

std::string RunConfigToText(const RunConfig& config) {
  std::string out;
  for (const auto& [key, value] : ConfigEntries(config)) out += key + " = " + value + "\n";
  return out;
}

}  // namespace vulnlens::pipeline
