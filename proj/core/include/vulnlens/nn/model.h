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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vulnlens/codegraph/graph.h"
#include "vulnlens/tensor/tape.h"
#include "vulnlens/tensor/tensor.h"

namespace vulnlens {
class Rng;
}

namespace vulnlens::nn {

enum class Arch { kGcn, kGgnn };
enum class Readout { kMean, kMeanMax };

std::string_view ArchName(Arch arch);
Arch ParseArch(std::string_view name);
std::string_view ReadoutName(Readout readout);
Readout ParseReadout(std::string_view name);

inline constexpr int kProjectionDim = 128;

struct EncoderConfig {
  Arch arch = Arch::kGcn;
  int feature_dim = codegraph::kDefaultFeatureDim;
  int hidden_dim = 64;
  // Message-passing layers (gcn) or propagation steps (ggnn); -1 selects
  // the architecture default of 3 and 4 respectively.
  int layers = -1;
  std::vector<codegraph::EdgeType> edge_types = {
      codegraph::EdgeType::kNext, codegraph::EdgeType::kCtrl, codegraph::EdgeType::kData};
  Readout readout = Readout::kMean;

  int steps() const;
  // Width of the pooled graph embedding h.
  int embedding_dim() const;
  // Throws ConfigError on invalid settings.
  void Validate() const;
};

// Parameters bound onto a tape, by name.
using BoundParams = std::map<std::string, tensor::Var>;

// Places every parameter on the tape, as gradient leaves when `trainable`.
BoundParams Bind(tensor::Tape& tape, const tensor::ParamSet& params, bool trainable);

tensor::ParamSet InitEncoder(const EncoderConfig& config, Rng& rng);
tensor::ParamSet InitProjection(const EncoderConfig& config, Rng& rng);
tensor::ParamSet InitClassifier(const EncoderConfig& config, Rng& rng);

// Soft masks for one forward pass. `edge_weights` is E x 1 aligned with
// graph.edges (only existing edges carry a weight); `feature_weights` is
// V x d. Absent masks mean all ones.
struct GraphMasks {
  std::optional<tensor::Var> edge_weights;
  std::optional<tensor::Var> feature_weights;
};

// Graph embedding h, 1 x embedding_dim.
tensor::Var Encode(tensor::Tape& tape, const BoundParams& params, const EncoderConfig& config,
                   const codegraph::CodeGraph& graph, const GraphMasks& masks = {});

// Projection head: h -> relu(h W1 + b1) W2 + b2, L2-normalised. Accepts a
// batch of rows.
tensor::Var Project(const BoundParams& params, tensor::Var h);

// Classifier logits over {benign, vulnerable} for each row of h.
tensor::Var ClassifierLogits(const BoundParams& params, tensor::Var h);

// Row-wise softmax of logits.
tensor::Var Softmax(tensor::Var logits);

// A frozen model usable by the explainer: class logits (1 x 2) of a possibly
// masked graph.
class GraphModel {
 public:
  virtual ~GraphModel() = default;
  virtual tensor::Var Logits(tensor::Tape& tape, const codegraph::CodeGraph& graph,
                             const GraphMasks& masks) const = 0;

  // Convenience: class probabilities without masks.
  tensor::Tensor Probabilities(const codegraph::CodeGraph& graph) const;
  int Predict(const codegraph::CodeGraph& graph) const;
};

// Encoder followed by classifier, both frozen.
class EncoderClassifier : public GraphModel {
 public:
  EncoderClassifier(EncoderConfig config, tensor::ParamSet encoder, tensor::ParamSet classifier);

  tensor::Var Logits(tensor::Tape& tape, const codegraph::CodeGraph& graph,
                     const GraphMasks& masks) const override;

  const EncoderConfig& config() const { return config_; }
  const tensor::ParamSet& encoder() const { return encoder_; }
  const tensor::ParamSet& classifier() const { return classifier_; }

 private:
  EncoderConfig config_;
  tensor::ParamSet encoder_;
  tensor::ParamSet classifier_;
};

// Embedding of an unmasked graph as a plain tensor.
tensor::Tensor EmbedGraph(const EncoderConfig& config, const tensor::ParamSet& encoder,
                          const codegraph::CodeGraph& graph);

}  // namespace vulnlens::nn
