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

#include <set>
#include <optional>
#include <vector>

namespace vulnlens::eval {

// Binary detection scores with vulnerable (1) as the positive class.
struct DetectionMetrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  int true_positives = 0;
  int false_positives = 0;
  int false_negatives = 0;
  int true_negatives = 0;
  // Set when the corresponding denominator was zero and the score reported as 0.
  bool precision_undefined = false;
  bool recall_undefined = false;
};

// Throws LengthMismatchError when the lists differ in length and DataError
// for labels other than 0/1.
DetectionMetrics ComputeDetectionMetrics(const std::vector<int>& predictions,
                                         const std::vector<int>& labels);

using LineSet = std::set<int>;

struct StatementScores {
  double precision = 0.0;
  double recall = 0.0;
  double iou = 0.0;
  // The explanation was empty; precision is reported as 0.
  bool degenerate = false;
};

// Overlap of explained lines with ground-truth lines. Throws
// MissingGroundTruthError when `truth` is empty.
StatementScores ScoreStatements(const LineSet& explained, const LineSet& truth);

struct VtpMetrics {
  double mean_precision = 0.0;
  double mean_recall = 0.0;
  double mean_iou = 0.0;
  int instances = 0;
  int degenerate = 0;
  std::vector<StatementScores> per_instance;
};

// Averages ScoreStatements over aligned instances. Throws LengthMismatchError
// and MissingGroundTruthError.
VtpMetrics ComputeVtpMetrics(const std::vector<LineSet>& explained,
                             const std::vector<std::optional<LineSet>>& truths);

}  // namespace vulnlens::eval
