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
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vulnlens/minic/ast.h"
#include "vulnlens/minic/ast_walk.h"
#include "vulnlens/tensor/tensor.h"

namespace vulnlens::codegraph {

enum class EdgeType { kNext = 0, kCtrl = 1, kData = 2 };
inline constexpr int kNumEdgeTypes = 3;

std::string_view EdgeTypeName(EdgeType type);
EdgeType ParseEdgeType(std::string_view name);

enum class StmtKind {
  kDecl,
  kAssign,
  kExprStmt,
  kReturn,
  kBreak,
  kIf,
  kWhile,
  kForInit,
  kForCond,
  kForUpdate,
  kSwitch,
  // Placeholder node for a function without statements.
  kEntry,
};

std::string_view StmtKindName(StmtKind kind);
StmtKind ParseStmtKind(std::string_view name);

// One statement-level node. Compound statements contribute only their header
// (`if (c)`, `while (c)`, `switch (s)`); a for-loop contributes separate
// initializer, condition and update nodes.
struct NodeInfo {
  int stmt_id = 0;
  minic::SourceSpan span;
  std::vector<std::string> tokens;
  StmtKind kind = StmtKind::kEntry;

  // Source lines covered by the node, start_line..end_line.
  std::vector<int> Lines() const;
};

struct Edge {
  int src = 0;
  int dst = 0;
  EdgeType type = EdgeType::kNext;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Variables read and written by one node.
struct VarAccess {
  std::set<std::string> strong_defs;  // overwrite the whole variable
  std::set<std::string> weak_defs;    // array element writes
  std::set<std::string> uses;
};

// Statement-level control-flow graph. Node numbering is shared with the
// CodeGraph built from the same function.
struct Cfg {
  std::vector<NodeInfo> nodes;
  std::vector<VarAccess> access;
  std::vector<std::vector<int>> successors;
  int entry = 0;
  // Innermost enclosing construct's condition node, or -1.
  std::vector<int> control_parent;
  // Lead node of each statement sequence, used for sequential edges.
  std::vector<std::pair<int, int>> sequence_pairs;
};

Cfg BuildCfg(const minic::Function& fn);

// (definition node, use node) pairs such that the definition reaches the use
// along some CFG path without an intervening strong redefinition, and the use
// reads the defined variable. Sorted and unique; may include self pairs.
std::vector<std::pair<int, int>> ReachingDefinitions(const Cfg& cfg);

// (condition node, dependent node) pairs from structural nesting.
std::vector<std::pair<int, int>> ControlDependence(const Cfg& cfg);
std::vector<std::pair<int, int>> ControlDependence(const minic::Function& fn);

// Row i is the L2-normalised histogram of StableHash(token) mod dim over the
// tokens of node i; a node without tokens gives a zero row.
tensor::Tensor EncodeFeatures(const std::vector<NodeInfo>& nodes, int dim);

struct CodeGraph {
  std::vector<NodeInfo> nodes;
  std::vector<Edge> edges;  // sorted, unique, no self-loops
  std::optional<int> label;  // 1 = vulnerable, 0 = benign
  tensor::Tensor features;   // V x d

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int feature_dim() const { return features.cols(); }
  // Binary V x V matrix of one edge type.
  tensor::Tensor Adjacency(EdgeType type) const;
  std::size_t CountEdges(EdgeType type) const;
};

inline constexpr int kDefaultFeatureDim = 64;

CodeGraph BuildGraph(const minic::Function& fn, std::optional<int> label,
                     int dim = kDefaultFeatureDim);

// Assembles a graph from parts, normalising the edge list (sort, dedupe,
// drop self-loops) and validating shapes.
CodeGraph MakeGraph(std::vector<NodeInfo> nodes, std::vector<Edge> edges,
                    std::optional<int> label, tensor::Tensor features);

// One-line structured text record and its inverse.
std::string GraphToJson(const CodeGraph& graph);
CodeGraph GraphFromJson(std::string_view text);

}  // namespace vulnlens::codegraph
