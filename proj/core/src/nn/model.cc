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

#include "vulnlens/nn/model.h"

#include <algorithm>

#include "vulnlens/common/error.h"
#include "vulnlens/common/rng.h"
#include "vulnlens/tensor/ops.h"

namespace vulnlens::nn {

using codegraph::CodeGraph;
using codegraph::EdgeType;
using tensor::ParamSet;
using tensor::Tape;
using tensor::Tensor;
using tensor::Var;

std::string_view ArchName(Arch arch) { return arch == Arch::kGcn ? "gcn" : "ggnn"; }

Arch ParseArch(std::string_view name) {
  if (name == "gcn") return Arch::kGcn;
  if (name == "ggnn") return Arch::kGgnn;
  throw ConfigError("unknown encoder architecture '" + std::string(name) + "'");
}

std::string_view ReadoutName(Readout readout) {
  return readout == Readout::kMean ? "mean" : "mean+max";
}

Readout ParseReadout(std::string_view name) {
  if (name == "mean") return Readout::kMean;
  if (name == "mean+max") return Readout::kMeanMax;
  throw ConfigError("unknown readout '" + std::string(name) + "'");
}

int EncoderConfig::steps() const {
  if (layers >= 0) return layers;
  return arch == Arch::kGcn ? 3 : 4;
}

int EncoderConfig::embedding_dim() const {
  return readout == Readout::kMeanMax ? 2 * hidden_dim : hidden_dim;
}

void EncoderConfig::Validate() const {
  if (hidden_dim < 8) throw ConfigError("hidden_dim must be at least 8");
  if (feature_dim < 8) throw ConfigError("feature dimension must be at least 8");
  if (steps() < 1) throw ConfigError("encoder needs at least one layer/step");
  if (edge_types.empty()) throw ConfigError("encoder needs at least one edge type");
}

BoundParams Bind(Tape& tape, const ParamSet& params, bool trainable) {
  BoundParams bound;
  for (const auto& [name, t] : params) {
    bound.emplace(name, trainable ? tape.Leaf(t) : tape.Constant(t));
  }
  return bound;
}

namespace {

Tensor SmallBias(int cols, Rng& rng) { return Tensor::Randn(1, cols, rng, 0.01); }

const Var& Param(const BoundParams& params, const std::string& name) {
  auto it = params.find(name);
  if (it == params.end()) throw ShapeError("missing parameter '" + name + "'");
  return it->second;
}

std::string EdgeParamName(EdgeType type) {
  std::string name(codegraph::EdgeTypeName(type));
  std::transform(name.begin(), name.end(), name.begin(), [](char c) { return std::tolower(c); });
  return name;
}

// Edge weights restricted to the configured edge types.
Var SelectedEdgeWeights(Tape& tape, const CodeGraph& graph, const GraphMasks& masks,
                        const std::vector<EdgeType>& types) {
  const int e = static_cast<int>(graph.edges.size());
  Tensor select(e, 1);
  for (int k = 0; k < e; ++k) {
    select[k] = std::find(types.begin(), types.end(), graph.edges[k].type) != types.end() ? 1.0 : 0.0;
  }
  if (!masks.edge_weights) return tape.Constant(std::move(select));
  if (masks.edge_weights->rows() != e || masks.edge_weights->cols() != 1) {
    throw ShapeError("edge mask " + masks.edge_weights->value().ShapeString() + " for " +
                     std::to_string(e) + " edges");
  }
  return tensor::Mul(*masks.edge_weights, tape.Constant(std::move(select)));
}

Var InputProjection(Tape& tape, const BoundParams& params, const CodeGraph& graph,
                    const GraphMasks& masks) {
  Var x = tape.Constant(graph.features);
  if (masks.feature_weights) {
    if (!masks.feature_weights->value().SameShape(graph.features)) {
      throw ShapeError("feature mask " + masks.feature_weights->value().ShapeString() +
                       " for features " + graph.features.ShapeString());
    }
    x = tensor::Mul(x, *masks.feature_weights);
  }
  return tensor::MatMul(x, Param(params, "enc.w_in"));
}

std::pair<std::vector<int>, std::vector<int>> Endpoints(const CodeGraph& graph) {
  std::vector<int> src, dst;
  for (const auto& e : graph.edges) {
    src.push_back(e.src);
    dst.push_back(e.dst);
  }
  return {src, dst};
}

Var EncodeGcn(Tape& tape, const BoundParams& params, const EncoderConfig& config,
              const CodeGraph& graph, const GraphMasks& masks) {
  const int v = graph.num_nodes();
  Var h = InputProjection(tape, params, graph, masks);
  const auto [src, dst] = Endpoints(graph);
  Tensor identity(v, v);
  for (int i = 0; i < v; ++i) identity(i, i) = 1.0;
  Var weights = SelectedEdgeWeights(tape, graph, masks, config.edge_types);
  Var adjacency = tensor::RowStochastic(tensor::Add(
      tensor::ScatterEdges(weights, src, dst, v, /*symmetric=*/true), tape.Constant(identity)));
  for (int l = 0; l < config.steps(); ++l) {
    const std::string p = "enc.gcn." + std::to_string(l);
    h = tensor::Relu(tensor::AddRow(
        tensor::MatMul(tensor::MatMul(adjacency, h), Param(params, p + ".w")), Param(params, p + ".b")));
  }
  return h;
}

Var EncodeGgnn(Tape& tape, const BoundParams& params, const EncoderConfig& config,
               const CodeGraph& graph, const GraphMasks& masks) {
  const int v = graph.num_nodes();
  Var h = InputProjection(tape, params, graph, masks);
  const auto [src, dst] = Endpoints(graph);
  Var weights = SelectedEdgeWeights(tape, graph, masks, config.edge_types);
  // Incoming adjacency per edge type: row j sums over edges i -> j.
  std::vector<std::pair<EdgeType, Var>> incoming;
  for (EdgeType type : config.edge_types) {
    Tensor of_type(static_cast<int>(graph.edges.size()), 1);
    for (std::size_t k = 0; k < graph.edges.size(); ++k) {
      of_type[k] = graph.edges[k].type == type ? 1.0 : 0.0;
    }
    Var w = tensor::Mul(weights, tape.Constant(std::move(of_type)));
    incoming.emplace_back(type, tensor::ScatterEdges(w, dst, src, v, /*symmetric=*/false));
  }
  auto gate = [&](Var m, Var state, const char* name) {
    const std::string p = std::string("enc.ggnn.") + name;
    return tensor::AddRow(tensor::Add(tensor::MatMul(m, Param(params, p + ".w")),
                                      tensor::MatMul(state, Param(params, p + ".u"))),
                          Param(params, p + ".b"));
  };
  for (int t = 0; t < config.steps(); ++t) {
    std::optional<Var> message;
    for (const auto& [type, a] : incoming) {
      Var m = tensor::MatMul(tensor::MatMul(a, h),
                             Param(params, "enc.ggnn.msg_" + EdgeParamName(type)));
      message = message ? tensor::Add(*message, m) : m;
    }
    Var m = tensor::AddRow(*message, Param(params, "enc.ggnn.msg_b"));
    Var z = tensor::Sigmoid(gate(m, h, "z"));
    Var r = tensor::Sigmoid(gate(m, h, "r"));
    Var candidate = tensor::Tanh(
        tensor::AddRow(tensor::Add(tensor::MatMul(m, Param(params, "enc.ggnn.h.w")),
                                   tensor::MatMul(tensor::Mul(r, h), Param(params, "enc.ggnn.h.u"))),
                       Param(params, "enc.ggnn.h.b")));
    h = tensor::Add(tensor::Mul(tensor::OneMinus(z), h), tensor::Mul(z, candidate));
  }
  return h;
}

}  // namespace

ParamSet InitEncoder(const EncoderConfig& config, Rng& rng) {
  const int d = config.feature_dim, hd = config.hidden_dim;
  ParamSet p;
  p["enc.w_in"] = Tensor::Glorot(d, hd, rng);
  if (config.arch == Arch::kGcn) {
    for (int l = 0; l < config.steps(); ++l) {
      const std::string prefix = "enc.gcn." + std::to_string(l);
      p[prefix + ".w"] = Tensor::Glorot(hd, hd, rng);
      p[prefix + ".b"] = SmallBias(hd, rng);
    }
  } else {
    for (EdgeType type : config.edge_types) {
      p["enc.ggnn.msg_" + EdgeParamName(type)] = Tensor::Glorot(hd, hd, rng);
    }
    p["enc.ggnn.msg_b"] = SmallBias(hd, rng);
    for (const char* g : {"z", "r", "h"}) {
      const std::string prefix = std::string("enc.ggnn.") + g;
      p[prefix + ".w"] = Tensor::Glorot(hd, hd, rng);
      p[prefix + ".u"] = Tensor::Glorot(hd, hd, rng);
      p[prefix + ".b"] = SmallBias(hd, rng);
    }
  }
  return p;
}

ParamSet InitProjection(const EncoderConfig& config, Rng& rng) {
  const int e = config.embedding_dim();
  ParamSet p;
  p["proj.w1"] = Tensor::Glorot(e, e, rng);
  p["proj.b1"] = SmallBias(e, rng);
  p["proj.w2"] = Tensor::Glorot(e, kProjectionDim, rng);
  p["proj.b2"] = SmallBias(kProjectionDim, rng);
  return p;
}

ParamSet InitClassifier(const EncoderConfig& config, Rng& rng) {
  const int e = config.embedding_dim();
  const int mid = std::max(1, e / 2);
  ParamSet p;
  p["cls.w1"] = Tensor::Glorot(e, mid, rng);
  p["cls.b1"] = SmallBias(mid, rng);
  p["cls.w2"] = Tensor::Glorot(mid, 2, rng);
  p["cls.b2"] = SmallBias(2, rng);
  return p;
}

Var Encode(Tape& tape, const BoundParams& params, const EncoderConfig& config,
           const CodeGraph& graph, const GraphMasks& masks) {
  if (graph.feature_dim() != config.feature_dim) {
    throw ShapeError("graph feature dimension " + std::to_string(graph.feature_dim()) +
                     " differs from encoder input " + std::to_string(config.feature_dim));
  }
  Var nodes = config.arch == Arch::kGcn ? EncodeGcn(tape, params, config, graph, masks)
                                        : EncodeGgnn(tape, params, config, graph, masks);
  Var mean = tensor::MeanPoolRows(nodes);
  if (config.readout == Readout::kMean) return mean;
  return tensor::ConcatCols({mean, tensor::MaxPoolRows(nodes)});
}

Var Project(const BoundParams& params, Var h) {
  Var hidden = tensor::Relu(tensor::AddRow(tensor::MatMul(h, Param(params, "proj.w1")),
                                           Param(params, "proj.b1")));
  Var out = tensor::AddRow(tensor::MatMul(hidden, Param(params, "proj.w2")), Param(params, "proj.b2"));
  return tensor::RowL2Normalize(out, 1e-12);
}

Var ClassifierLogits(const BoundParams& params, Var h) {
  Var hidden = tensor::Relu(tensor::AddRow(tensor::MatMul(h, Param(params, "cls.w1")),
                                           Param(params, "cls.b1")));
  return tensor::AddRow(tensor::MatMul(hidden, Param(params, "cls.w2")), Param(params, "cls.b2"));
}

Var Softmax(Var logits) { return tensor::Exp(tensor::LogSoftmax(logits)); }

Tensor GraphModel::Probabilities(const CodeGraph& graph) const {
  Tape tape;
  return Softmax(Logits(tape, graph, {})).value();
}

int GraphModel::Predict(const CodeGraph& graph) const {
  const Tensor p = Probabilities(graph);
  return p(0, 1) > p(0, 0) ? 1 : 0;
}

EncoderClassifier::EncoderClassifier(EncoderConfig config, ParamSet encoder, ParamSet classifier)
    : config_(std::move(config)), encoder_(std::move(encoder)), classifier_(std::move(classifier)) {}

Var EncoderClassifier::Logits(Tape& tape, const CodeGraph& graph, const GraphMasks& masks) const {
  const BoundParams enc = Bind(tape, encoder_, false);
  const BoundParams cls = Bind(tape, classifier_, false);
  return ClassifierLogits(cls, Encode(tape, enc, config_, graph, masks));
}

Tensor EmbedGraph(const EncoderConfig& config, const ParamSet& encoder, const CodeGraph& graph) {
  Tape tape;
  return Encode(tape, Bind(tape, encoder, false), config, graph).value();
}

}  // namespace vulnlens::nn
