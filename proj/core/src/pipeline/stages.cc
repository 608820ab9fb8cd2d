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

#include "vulnlens/pipeline/stages.h"

#include <cstdio>
#include <map>
#include <set>

#include "json.hpp"
#include "vulnlens/common/error.h"
#include "vulnlens/common/io.h"
#include "vulnlens/common/rng.h"
#include "vulnlens/explain/explainer.h"
#include "vulnlens/minic/parser.h"
#include "vulnlens/minic/printer.h"
#include "vulnlens/tensor/checkpoint.h"
#include "vulnlens/transforms/transforms.h"

namespace vulnlens::pipeline {

namespace {

using json = nlohmann::json;

json ParseLine(std::string_view line) {
  try {
    return json::parse(line);
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed record: ") + e.what());
  }
}

template <typename T>
T Field(const json& record, const char* key) {
  const auto it = record.find(key);
  if (it == record.end()) throw FormatError(std::string("record lacks field '") + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw FormatError(std::string("field '") + key + "' has the wrong type");
  }
}

std::string Lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const std::string& line : lines) out += line + "\n";
  return out;
}

void WriteArtifact(const std::string& path, std::string_view artifact, const RunConfig& config,
                   const std::vector<std::string>& body) {
  WriteFileAtomic(path, HeaderJson(artifact, config) + "\n" + Lines(body));
}

bool InSplit(const RunConfig& config, const std::string& split) {
  return config.eval_split == "all" || config.eval_split == split;
}

struct GraphRecord {
  DatasetRecord record;
  codegraph::CodeGraph graph;
};

std::vector<GraphRecord> LoadGraphs(const RunConfig& config, const std::string& path) {
  std::vector<GraphRecord> out;
  for (const std::string& line : ReadArtifact(path, kGraphsArtifact)) {
    const json j = ParseLine(line);
    GraphRecord r{DatasetRecordFromJson(line), codegraph::GraphFromJson(j.at("graph").dump())};
    if (r.graph.feature_dim() != config.encoder.feature_dim) {
      throw ConfigError("graph " + r.record.id + " has feature dimension " +
                        std::to_string(r.graph.feature_dim()) + ", config expects " +
                        std::to_string(config.encoder.feature_dim));
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<training::Sample> Samples(const std::vector<GraphRecord>& records,
                                      std::string_view split) {
  std::vector<training::Sample> out;
  for (const GraphRecord& r : records) {
    if (r.record.split != split) continue;
    out.push_back({r.record.id, minic::ParseSource(r.record.code), r.graph, r.record.label});
  }
  return out;
}

std::map<std::string, std::string> EncoderEntries(const RunConfig& config) {
  std::map<std::string, std::string> out;
  for (const auto& [key, value] : ConfigEntries(config)) {
    if (key.rfind("encoder.", 0) == 0) out[key] = value;
  }
  return out;
}

tensor::Checkpoint MakeCheckpoint(std::string_view artifact, const RunConfig& config) {
  tensor::Checkpoint checkpoint;
  checkpoint.metadata["artifact"] = std::string(artifact);
  checkpoint.metadata["config"] = RunConfigToText(config);
  return checkpoint;
}

tensor::Checkpoint LoadCompatibleCheckpoint(const std::string& path, std::string_view artifact,
                                            const RunConfig& config) {
  tensor::Checkpoint checkpoint = tensor::LoadCheckpoint(path);
  const auto kind = checkpoint.metadata.find("artifact");
  if (kind == checkpoint.metadata.end() || kind->second != artifact) {
    throw FormatError(path + " is not a " + std::string(artifact) + " checkpoint");
  }
  const auto text = checkpoint.metadata.find("config");
  if (text == checkpoint.metadata.end()) throw FormatError(path + " lacks its configuration");
  if (EncoderEntries(ParseRunConfig(text->second)) != EncoderEntries(config)) {
    throw ConfigError(path + " was trained with different encoder settings");
  }
  return checkpoint;
}

tensor::ParamSet WithPrefix(const tensor::ParamSet& params, std::string_view prefix) {
  tensor::ParamSet out;
  for (const auto& [name, value] : params) {
    if (name.rfind(prefix, 0) == 0) out.emplace(name, value);
  }
  return out;
}

nn::EncoderClassifier LoadModel(const RunConfig& config, const std::string& path) {
  const tensor::Checkpoint checkpoint = LoadCompatibleCheckpoint(path, "model", config);
  return nn::EncoderClassifier(config.encoder, WithPrefix(checkpoint.params, "enc."),
                               WithPrefix(checkpoint.params, "cls."));
}

json EpochJson(const training::EpochRecord& record) {
  json j = {{"kind", "epoch"},
            {"epoch", record.epoch},
            {"train_loss", record.train_loss},
            {"validation_loss", record.validation_loss}};
  if (record.validation_f1) j["validation_f1"] = *record.validation_f1;
  return j;
}

json LinesJson(const eval::LineSet& lines) { return json(std::vector<int>(lines.begin(), lines.end())); }

}  // namespace

std::string DatasetRecordToJson(const DatasetRecord& record) {
  json j = {{"kind", "record"}, {"id", record.id}, {"split", record.split}, {"code", record.code}};
  if (record.label) j["label"] = *record.label;
  if (record.vuln_lines) j["vuln_lines"] = LinesJson(*record.vuln_lines);
  return j.dump();
}

DatasetRecord DatasetRecordFromJson(std::string_view line) {
  const json j = ParseLine(line);
  if (!j.is_object()) throw FormatError("record is not an object");
  DatasetRecord r;
  r.id = Field<std::string>(j, "id");
  r.code = Field<std::string>(j, "code");
  if (j.contains("split")) r.split = Field<std::string>(j, "split");
  if (r.split != "train" && r.split != "validation" && r.split != "test") {
    throw FormatError("record " + r.id + " has unknown split '" + r.split + "'");
  }
  if (j.contains("label") && !j["label"].is_null()) {
    r.label = Field<int>(j, "label");
    if (*r.label != 0 && *r.label != 1) throw DataError("record " + r.id + " label must be 0 or 1");
  }
  try {
    minic::ParseSource(r.code);
  } catch (const Error& e) {
    throw DataError("record " + r.id + " does not parse: " + e.what());
  }
  if (j.contains("vuln_lines") && !j["vuln_lines"].is_null()) {
    const auto lines = Field<std::vector<int>>(j, "vuln_lines");
    const int line_count = static_cast<int>(SplitLines(r.code).size());
    for (int line : lines) {
      if (line < 1 || line > line_count) {
        throw DataError("record " + r.id + " vuln line " + std::to_string(line) +
                        " is outside the code");
      }
    }
    r.vuln_lines = eval::LineSet(lines.begin(), lines.end());
  }
  return r;
}

std::string HeaderJson(std::string_view artifact, const RunConfig& config) {
  return json({{"kind", "header"},
               {"artifact", artifact},
               {"config", ConfigEntries(config)}})
      .dump();
}

std::vector<std::string> ReadArtifact(const std::string& path, std::string_view artifact) {
  std::vector<std::string> lines = SplitLines(ReadFile(path));
  if (lines.empty()) throw FormatError(path + " is empty");
  const json header = ParseLine(lines.front());
  if (!header.is_object() || header.value("kind", "") != "header") {
    throw FormatError(path + " lacks a header record");
  }
  if (header.value("artifact", "") != artifact) {
    throw FormatError(path + " holds '" + header.value("artifact", "") + "', expected '" +
                      std::string(artifact) + "'");
  }
  lines.erase(lines.begin());
  return lines;
}

void GenCorpusStage(const RunConfig& config, const std::string& out, std::ostream& log) {
  config.Validate();
  const std::vector<eval::CorpusSample> corpus = eval::GenerateCorpus(config.CorpusSpecWithSeed());
  const training::Split split =
      training::SplitIndices(static_cast<int>(corpus.size()), config.seed);
  std::vector<std::string> names(corpus.size());
  for (int i : split.train) names[i] = "train";
  for (int i : split.validation) names[i] = "validation";
  for (int i : split.test) names[i] = "test";
  std::vector<std::string> body;
  int vulnerable = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const eval::CorpusSample& s = corpus[i];
    DatasetRecord r{s.id, s.code, s.label, std::nullopt, names[i]};
    if (s.label == 1) r.vuln_lines = s.vuln_lines;
    body.push_back(DatasetRecordToJson(r));
    vulnerable += s.label;
  }
  WriteArtifact(out, kDatasetArtifact, config, body);
  log << "gen-corpus: " << corpus.size() << " samples, " << vulnerable << " vulnerable\n";
}

void AugmentStage(const RunConfig& config, const std::string& in, const std::string& out,
                  std::ostream& log) {
  config.Validate();
  std::vector<std::string> body;
  std::size_t applied_total = 0;
  for (const std::string& line : ReadArtifact(in, kDatasetArtifact)) {
    const DatasetRecord r = DatasetRecordFromJson(line);
    transforms::AugmentConfig augment;
    augment.per_op_probability = config.train.augment_probability;
    augment.rng_seed = DeriveSeed(config.seed, r.id);
    const transforms::AugmentResult result = transforms::Augment(minic::ParseSource(r.code), augment);
    std::vector<std::string> ops;
    for (transforms::Op op : result.applied) ops.emplace_back(transforms::OpCode(op));
    applied_total += ops.size();
    json j = json::parse(DatasetRecordToJson(r));
    j["kind"] = "pair";
    j["variant"] = minic::PrettyPrint(result.function);
    j["applied"] = ops;
    body.push_back(j.dump());
  }
  WriteArtifact(out, kPairsArtifact, config, body);
  log << "augment: " << body.size() << " pairs, "
      << (body.empty() ? 0.0 : static_cast<double>(applied_total) / body.size())
      << " transformations per program\n";
}

void BuildGraphsStage(const RunConfig& config, const std::string& in, const std::string& out,
                      std::ostream& log) {
  config.Validate();
  std::vector<std::string> body;
  for (const std::string& line : ReadArtifact(in, kDatasetArtifact)) {
    const DatasetRecord r = DatasetRecordFromJson(line);
    const codegraph::CodeGraph graph =
        codegraph::BuildGraph(minic::ParseSource(r.code), r.label, config.encoder.feature_dim);
    json j = json::parse(DatasetRecordToJson(r));
    j["kind"] = "graph";
    j["graph"] = json::parse(codegraph::GraphToJson(graph));
    body.push_back(j.dump());
  }
  WriteArtifact(out, kGraphsArtifact, config, body);
  log << "build-graphs: " << body.size() << " graphs\n";
}

void PretrainStage(const RunConfig& config, const std::string& graphs, const std::string& out,
                   std::ostream& log) {
  config.Validate();
  const std::vector<GraphRecord> records = LoadGraphs(config, graphs);
  const std::vector<training::Sample> train = Samples(records, "train");
  const std::vector<training::Sample> validation = Samples(records, "validation");
  if (train.empty()) throw DataError("no training records in " + graphs);
  std::vector<std::string> log_lines;
  const training::PretrainResult result = training::PretrainEncoder(
      train, validation, config.encoder, config.TrainConfigWithSeed(),
      [&](const training::EpochRecord& record) {
        log_lines.push_back(EpochJson(record).dump());
        log << "pretrain: epoch " << record.epoch << " train " << record.train_loss
            << " validation " << record.validation_loss << "\n";
      });
  for (const std::string& d : result.diagnostics) {
    log_lines.push_back(json({{"kind", "diagnostic"}, {"message", d}}).dump());
    log << "pretrain: " << d << "\n";
  }
  log_lines.push_back(json({{"kind", "result"},
                            {"best_epoch", result.best_epoch},
                            {"initial_loss", result.initial_loss}})
                          .dump());
  tensor::Checkpoint checkpoint = MakeCheckpoint("encoder", config);
  checkpoint.params = result.encoder;
  for (const auto& [name, value] : result.classifier) checkpoint.params.emplace(name, value);
  const std::string log_path = out + ".log";
  WriteArtifact(log_path, "training-log", config, log_lines);
  try {
    tensor::SaveCheckpoint(out, checkpoint);
  } catch (...) {
    std::remove(log_path.c_str());
    throw;
  }
}

void TrainClassifierStage(const RunConfig& config, const std::string& graphs,
                          const std::string& encoder, const std::string& out, std::ostream& log) {
  config.Validate();
  const tensor::Checkpoint source = LoadCompatibleCheckpoint(encoder, "encoder", config);
  tensor::Checkpoint checkpoint = MakeCheckpoint("model", config);
  checkpoint.params = WithPrefix(source.params, "enc.");
  tensor::ParamSet classifier = WithPrefix(source.params, "cls.");
  if (!classifier.empty()) {
    log << "train-classifier: reusing the classifier trained jointly with the encoder\n";
  } else {
    const std::vector<GraphRecord> records = LoadGraphs(config, graphs);
    const training::ClassifierResult result = training::TrainClassifier(
        config.encoder, checkpoint.params, Samples(records, "train"),
        Samples(records, "validation"), config.TrainConfigWithSeed(),
        [&](const training::EpochRecord& record) {
          log << "train-classifier: epoch " << record.epoch << " validation f1 "
              << record.validation_f1.value_or(0.0) << "\n";
        });
    classifier = result.classifier;
  }
  for (const auto& [name, value] : classifier) checkpoint.params.emplace(name, value);
  tensor::SaveCheckpoint(out, checkpoint);
}

void DetectStage(const RunConfig& config, const std::string& graphs, const std::string& model,
                 const std::string& out, std::ostream& log) {
  config.Validate();
  const nn::EncoderClassifier classifier = LoadModel(config, model);
  std::vector<std::string> body;
  int vulnerable = 0;
  for (const GraphRecord& r : LoadGraphs(config, graphs)) {
    const training::Prediction p = training::Predict(classifier, r.graph);
    json j = {{"kind", "prediction"},
              {"id", r.record.id},
              {"split", r.record.split},
              {"predicted", p.label},
              {"p_vulnerable", p.probabilities(0, 1)}};
    if (r.record.label) j["label"] = *r.record.label;
    if (r.record.vuln_lines) j["vuln_lines"] = LinesJson(*r.record.vuln_lines);
    body.push_back(j.dump());
    vulnerable += p.label;
  }
  WriteArtifact(out, kPredictionsArtifact, config, body);
  log << "detect: " << body.size() << " records, " << vulnerable << " predicted vulnerable\n";
}

void ExplainStage(const RunConfig& config, const std::string& graphs, const std::string& model,
                  const std::string& out, std::ostream& log) {
  config.Validate();
  const nn::EncoderClassifier classifier = LoadModel(config, model);
  std::vector<std::string> body;
  for (const GraphRecord& r : LoadGraphs(config, graphs)) {
    if (!InSplit(config, r.record.split)) continue;
    if (classifier.Predict(r.graph) != 1) {
      body.push_back(json({{"kind", "skipped"},
                           {"id", r.record.id},
                           {"reason", "predicted benign"}})
                         .dump());
      log << "explain: skipping " << r.record.id << ", predicted benign\n";
      continue;
    }
    const explain::ExplanationReport report =
        explain::Explain(classifier, r.graph, config.explainer, DeriveSeed(config.seed, r.record.id));
    json statements = json::array();
    for (const auto& s : report.statements) {
      statements.push_back({{"line", s.line}, {"score", s.score}});
    }
    json edges = json::array();
    for (int k : report.kept_edges) {
      const codegraph::Edge& e = r.graph.edges[k];
      edges.push_back({e.src, e.dst, codegraph::EdgeTypeName(e.type)});
    }
    body.push_back(json({{"kind", "explanation"},
                         {"id", r.record.id},
                         {"predicted", report.predicted},
                         {"statements", statements},
                         {"kept_edges", edges},
                         {"factual_check", report.factual_check},
                         {"counterfactual_check", report.counterfactual_check},
                         {"degenerate", report.degenerate},
                         {"objective", report.objective}})
                       .dump());
  }
  WriteArtifact(out, kExplanationsArtifact, config, body);
  log << "explain: " << body.size() << " records\n";
}

void EvaluateStage(const RunConfig& config, const std::string& predictions,
                   const std::string& explanations, const std::string& out, std::ostream& log) {
  config.Validate();
  std::map<std::string, eval::LineSet> explained;
  for (const std::string& line : ReadArtifact(explanations, kExplanationsArtifact)) {
    const json j = ParseLine(line);
    if (Field<std::string>(j, "kind") != "explanation") continue;
    eval::LineSet lines;
    for (const json& s : j.at("statements")) lines.insert(Field<int>(s, "line"));
    explained[Field<std::string>(j, "id")] = lines;
  }
  std::vector<int> predicted, labels;
  std::vector<std::string> ids;
  std::vector<eval::LineSet> explained_sets;
  std::vector<std::optional<eval::LineSet>> truths;
  for (const std::string& line : ReadArtifact(predictions, kPredictionsArtifact)) {
    const json j = ParseLine(line);
    if (!InSplit(config, Field<std::string>(j, "split")) || !j.contains("label")) continue;
    const int p = Field<int>(j, "predicted");
    const int y = Field<int>(j, "label");
    predicted.push_back(p);
    labels.push_back(y);
    const std::string id = Field<std::string>(j, "id");
    const auto it = explained.find(id);
    if (p == 1 && y == 1 && j.contains("vuln_lines") && it != explained.end()) {
      const auto truth = Field<std::vector<int>>(j, "vuln_lines");
      ids.push_back(id);
      explained_sets.push_back(it->second);
      truths.emplace_back(eval::LineSet(truth.begin(), truth.end()));
    }
  }
  if (labels.empty()) throw DataError("no labelled predictions in split " + config.eval_split);
  const eval::DetectionMetrics d = eval::ComputeDetectionMetrics(predicted, labels);
  const eval::VtpMetrics v = eval::ComputeVtpMetrics(explained_sets, truths);
  std::vector<std::string> body;
  body.push_back(json({{"kind", "summary"},
                       {"split", config.eval_split},
                       {"detection",
                        {{"samples", labels.size()},
                         {"accuracy", d.accuracy},
                         {"precision", d.precision},
                         {"recall", d.recall},
                         {"f1", d.f1},
                         {"true_positives", d.true_positives},
                         {"false_positives", d.false_positives},
                         {"false_negatives", d.false_negatives},
                         {"true_negatives", d.true_negatives},
                         {"precision_undefined", d.precision_undefined},
                         {"recall_undefined", d.recall_undefined}}},
                       {"statements",
                        {{"instances", v.instances},
                         {"degenerate", v.degenerate},
                         {"msp", v.mean_precision},
                         {"msr", v.mean_recall},
                         {"miou", v.mean_iou}}}})
                     .dump());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const eval::StatementScores& s = v.per_instance[i];
    body.push_back(json({{"kind", "instance"},
                         {"id", ids[i]},
                         {"precision", s.precision},
                         {"recall", s.recall},
                         {"iou", s.iou},
                         {"degenerate", s.degenerate}})
                       .dump());
  }
  WriteArtifact(out, kMetricsArtifact, config, body);
  log << "evaluate: f1 " << d.f1 << ", miou " << v.mean_iou << " over " << v.instances
      << " explained records\n";
}

}  // namespace vulnlens::pipeline
