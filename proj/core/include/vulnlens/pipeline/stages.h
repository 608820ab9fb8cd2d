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
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "vulnlens/codegraph/graph.h"
#include "vulnlens/eval/metrics.h"
#include "vulnlens/pipeline/config.h"

namespace vulnlens::pipeline {

// Artifacts are newline-delimited JSON. The first line is a header record
// naming the artifact kind and echoing the effective configuration.
inline constexpr std::string_view kDatasetArtifact = "dataset";
inline constexpr std::string_view kPairsArtifact = "augmented-pairs";
inline constexpr std::string_view kGraphsArtifact = "graphs";
inline constexpr std::string_view kPredictionsArtifact = "predictions";
inline constexpr std::string_view kExplanationsArtifact = "explanations";
inline constexpr std::string_view kMetricsArtifact = "metrics";

struct DatasetRecord {
  std::string id;
  std::string code;
  std::optional<int> label;
  std::optional<eval::LineSet> vuln_lines;
  // train, validation or test. Records read without one count as test.
  std::string split = "test";
};

std::string DatasetRecordToJson(const DatasetRecord& record);
// FormatError for malformed JSON or fields; DataError when the code does not
// parse or vuln_lines falls outside the code.
DatasetRecord DatasetRecordFromJson(std::string_view line);

std::string HeaderJson(std::string_view artifact, const RunConfig& config);

// Body lines of an artifact; FormatError if the header is missing or names a
// different artifact kind.
std::vector<std::string> ReadArtifact(const std::string& path, std::string_view artifact);

// Stage entry points. Each validates `config`, reads its inputs and writes its
// outputs atomically. Progress and diagnostics go to `log`.
void GenCorpusStage(const RunConfig& config, const std::string& out, std::ostream& log);
void AugmentStage(const RunConfig& config, const std::string& in, const std::string& out,
                  std::ostream& log);
void BuildGraphsStage(const RunConfig& config, const std::string& in, const std::string& out,
                      std::ostream& log);
// Writes the encoder checkpoint to `out` and the epoch log to `out + ".log"`.
// In ce mode the checkpoint also carries the jointly trained classifier.
void PretrainStage(const RunConfig& config, const std::string& graphs, const std::string& out,
                   std::ostream& log);
// Writes a model checkpoint holding encoder and classifier parameters.
void TrainClassifierStage(const RunConfig& config, const std::string& graphs,
                          const std::string& encoder, const std::string& out, std::ostream& log);
void DetectStage(const RunConfig& config, const std::string& graphs, const std::string& model,
                 const std::string& out, std::ostream& log);
// Explains records of the configured split that the model predicts
// vulnerable; other records become "skipped" entries with a diagnostic.
void ExplainStage(const RunConfig& config, const std::string& graphs, const std::string& model,
                  const std::string& out, std::ostream& log);
// Detection metrics over the configured split plus statement metrics over
// correctly detected vulnerable records. The summary record is the second
// line of the output, after the header.
void EvaluateStage(const RunConfig& config, const std::string& predictions,
                   const std::string& explanations, const std::string& out, std::ostream& log);

}  // namespace vulnlens::pipeline
