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

#include "vulnlens/eval/metrics.h"

#include <algorithm>
#include <iterator>
#include <string>

#include "vulnlens/common/error.h"

namespace vulnlens::eval {

DetectionMetrics ComputeDetectionMetrics(const std::vector<int>& predictions,
                                         const std::vector<int>& labels) {
  if (predictions.size() != labels.size()) {
    throw LengthMismatchError(std::to_string(predictions.size()) + " predictions for " +
                              std::to_string(labels.size()) + " labels");
  }
  DetectionMetrics m;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int p = predictions[i], y = labels[i];
    if ((p != 0 && p != 1) || (y != 0 && y != 1)) throw DataError("labels must be 0 or 1");
    if (p == 1 && y == 1) ++m.true_positives;
    if (p == 1 && y == 0) ++m.false_positives;
    if (p == 0 && y == 1) ++m.false_negatives;
    if (p == 0 && y == 0) ++m.true_negatives;
  }
  const int n = static_cast<int>(labels.size());
  if (n > 0) m.accuracy = static_cast<double>(m.true_positives + m.true_negatives) / n;
  const int predicted = m.true_positives + m.false_positives;
  const int actual = m.true_positives + m.false_negatives;
  m.precision_undefined = predicted == 0;
  m.recall_undefined = actual == 0;
  if (predicted > 0) m.precision = static_cast<double>(m.true_positives) / predicted;
  if (actual > 0) m.recall = static_cast<double>(m.true_positives) / actual;
  if (m.precision + m.recall > 0) {
    m.f1 = 2 * m.precision * m.recall / (m.precision + m.recall);
  }
  return m;
}

StatementScores ScoreStatements(const LineSet& explained, const LineSet& truth) {
  if (truth.empty()) throw MissingGroundTruthError("empty ground-truth statement set");
  LineSet common, all;
  std::set_intersection(explained.begin(), explained.end(), truth.begin(), truth.end(),
                        std::inserter(common, common.end()));
  std::set_union(explained.begin(), explained.end(), truth.begin(), truth.end(),
                 std::inserter(all, all.end()));
  StatementScores s;
  const double hits = static_cast<double>(common.size());
  s.degenerate = explained.empty();
  if (!explained.empty()) s.precision = hits / static_cast<double>(explained.size());
  s.recall = hits / static_cast<double>(truth.size());
  s.iou = hits / static_cast<double>(all.size());
  return s;
}

VtpMetrics ComputeVtpMetrics(const std::vector<LineSet>& explained,
                             const std::vector<std::optional<LineSet>>& truths) {
  if (explained.size() != truths.size()) {
    throw LengthMismatchError(std::to_string(explained.size()) + " explanations for " +
                              std::to_string(truths.size()) + " ground truths");
  }
  VtpMetrics m;
  for (std::size_t i = 0; i < explained.size(); ++i) {
    if (!truths[i]) {
      throw MissingGroundTruthError("instance " + std::to_string(i) + " has no ground truth");
    }
    const StatementScores s = ScoreStatements(explained[i], *truths[i]);
    m.mean_precision += s.precision;
    m.mean_recall += s.recall;
    m.mean_iou += s.iou;
    if (s.degenerate) ++m.degenerate;
    m.per_instance.push_back(s);
  }
  m.instances = static_cast<int>(explained.size());
  if (m.instances > 0) {
    m.mean_precision /= m.instances;
    m.mean_recall /= m.instances;
    m.mean_iou /= m.instances;
  }
  return m;
}

}  // namespace vulnlens::eval
