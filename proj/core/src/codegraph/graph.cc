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

#include "vulnlens/codegraph/graph.h"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "vulnlens/common/error.h"
#include "vulnlens/common/rng.h"

namespace vulnlens::codegraph {
namespace {

using nlohmann::json;

constexpr std::string_view kEdgeNames[] = {"NEXT", "CTRL", "DATA"};
constexpr std::string_view kKindNames[] = {"Decl",    "Assign",  "ExprStmt", "Return",
                                           "Break",   "If",      "While",    "ForInit",
                                           "ForCond", "ForUpdate", "Switch", "Entry"};

}  // namespace

std::string_view EdgeTypeName(EdgeType type) { return kEdgeNames[static_cast<int>(type)]; }

EdgeType ParseEdgeType(std::string_view name) {
  for (int i = 0; i < kNumEdgeTypes; ++i) {
    if (kEdgeNames[i] == name) return static_cast<EdgeType>(i);
  }
  throw FormatError("unknown edge type '" + std::string(name) + "'");
}

std::string_view StmtKindName(StmtKind kind) { return kKindNames[static_cast<int>(kind)]; }

StmtKind ParseStmtKind(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kKindNames); ++i) {
    if (kKindNames[i] == name) return static_cast<StmtKind>(i);
  }
  throw FormatError("unknown statement kind '" + std::string(name) + "'");
}

std::vector<int> NodeInfo::Lines() const {
  std::vector<int> lines;
  if (!span.valid()) return lines;
  for (int l = span.start_line; l <= span.end_line; ++l) lines.push_back(l);
  return lines;
}

tensor::Tensor EncodeFeatures(const std::vector<NodeInfo>& nodes, int dim) {
  if (dim < 8) throw ConfigError("feature dimension must be at least 8, got " + std::to_string(dim));
  tensor::Tensor x(static_cast<int>(nodes.size()), dim);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const int row = static_cast<int>(i);
    for (const std::string& tok : nodes[i].tokens) {
      x(row, static_cast<int>(StableHash(tok) % static_cast<std::uint64_t>(dim))) += 1.0;
    }
    double norm = 0.0;
    for (int c = 0; c < dim; ++c) norm += x(row, c) * x(row, c);
    if (norm == 0.0) continue;
    norm = std::sqrt(norm);
    for (int c = 0; c < dim; ++c) x(row, c) /= norm;
  }
  return x;
}

tensor::Tensor CodeGraph::Adjacency(EdgeType type) const {
  tensor::Tensor a(num_nodes(), num_nodes());
  for (const Edge& e : edges) {
    if (e.type == type) a(e.src, e.dst) = 1.0;
  }
  return a;
}

std::size_t CodeGraph::CountEdges(EdgeType type) const {
  return static_cast<std::size_t>(
      std::count_if(edges.begin(), edges.end(), [type](const Edge& e) { return e.type == type; }));
}

CodeGraph MakeGraph(std::vector<NodeInfo> nodes, std::vector<Edge> edges,
                    std::optional<int> label, tensor::Tensor features) {
  const int v = static_cast<int>(nodes.size());
  if (v < 1) throw ShapeError("a code graph needs at least one node");
  if (features.rows() != v) {
    throw ShapeError("feature matrix has " + std::to_string(features.rows()) + " rows for " +
                     std::to_string(v) + " nodes");
  }
  if (label && *label != 0 && *label != 1) throw FormatError("graph label must be 0 or 1");
  for (const Edge& e : edges) {
    if (e.src < 0 || e.src >= v || e.dst < 0 || e.dst >= v) {
      throw ShapeError("edge endpoint out of range");
    }
  }
  edges.erase(std::remove_if(edges.begin(), edges.end(), [](const Edge& e) { return e.src == e.dst; }),
              edges.end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  CodeGraph g;
  g.nodes = std::move(nodes);
  g.edges = std::move(edges);
  g.label = label;
  g.features = std::move(features);
  return g;
}

CodeGraph BuildGraph(const minic::Function& fn, std::optional<int> label, int dim) {
  const Cfg cfg = BuildCfg(fn);
  std::vector<Edge> edges;
  for (const auto& [a, b] : cfg.sequence_pairs) edges.push_back({a, b, EdgeType::kNext});
  for (const auto& [a, b] : ControlDependence(cfg)) edges.push_back({a, b, EdgeType::kCtrl});
  for (const auto& [a, b] : ReachingDefinitions(cfg)) edges.push_back({a, b, EdgeType::kData});
  tensor::Tensor features = EncodeFeatures(cfg.nodes, dim);
  return MakeGraph(cfg.nodes, std::move(edges), label, std::move(features));
}

std::string GraphToJson(const CodeGraph& graph) {
  json nodes = json::array();
  for (const NodeInfo& n : graph.nodes) {
    nodes.push_back({{"id", n.stmt_id},
                     {"kind", StmtKindName(n.kind)},
                     {"span", {n.span.start_line, n.span.start_col, n.span.end_line, n.span.end_col}},
                     {"tokens", n.tokens}});
  }
  json edges = json::array();
  for (const Edge& e : graph.edges) edges.push_back({e.src, e.dst, EdgeTypeName(e.type)});
  json doc;
  doc["nodes"] = std::move(nodes);
  doc["edges"] = std::move(edges);
  doc["label"] = graph.label ? json(*graph.label) : json(nullptr);
  doc["dim"] = graph.feature_dim();
  doc["features"] = graph.features.data();
  return doc.dump();
}

CodeGraph GraphFromJson(std::string_view text) {
  try {
    const json doc = json::parse(text);
    std::vector<NodeInfo> nodes;
    for (const json& n : doc.at("nodes")) {
      NodeInfo info;
      info.stmt_id = n.at("id").get<int>();
      info.kind = ParseStmtKind(n.at("kind").get<std::string>());
      const auto span = n.at("span").get<std::vector<int>>();
      if (span.size() != 4) throw FormatError("span needs four integers");
      info.span = {span[0], span[1], span[2], span[3]};
      info.tokens = n.at("tokens").get<std::vector<std::string>>();
      nodes.push_back(std::move(info));
    }
    std::vector<Edge> edges;
    for (const json& e : doc.at("edges")) {
      edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(),
                       ParseEdgeType(e.at(2).get<std::string>())});
    }
    std::optional<int> label;
    if (!doc.at("label").is_null()) label = doc.at("label").get<int>();
    const int dim = doc.at("dim").get<int>();
    tensor::Tensor features(static_cast<int>(nodes.size()), dim,
                            doc.at("features").get<std::vector<double>>());
    return MakeGraph(std::move(nodes), std::move(edges), label, std::move(features));
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed graph record: ") + e.what());
  } catch (const ShapeError& e) {
    throw FormatError(std::string("malformed graph record: ") + e.what());
  }
}

}  // namespace vulnlens::codegraph
