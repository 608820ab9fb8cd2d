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
#include <string>
#include <string_view>
#include <vector>

#include "vulnlens/minic/ast.h"
#include "vulnlens/minic/ast_walk.h"

namespace vulnlens::transforms {

// Semantics-preserving rewrite operators. Function and variable renaming
// share one operator but carry separate site codes.
enum class Op {
  kFunctionRename,   // FR
  kVariableRename,   // VR
  kOperandSwap,      // OS
  kStatementSwap,    // SP
  kLoopExchange,     // LX
  kBlockSwap,        // BS
  kSwitchToIf,       // SI
};

std::string_view OpCode(Op op);

// A node where at least one operator applies. For kStatementSwap the path
// names the first of two adjacent statements.
struct Site {
  minic::NodePath path;
  std::vector<Op> applicable_ops;
};

// Pre-order list of injection sites.
std::vector<Site> FindSites(const minic::Function& fn);

// Individual operators. Each returns a new tree and leaves the input intact.
// They throw the operator-specific error when the precondition fails and
// SiteError when the path names a node of the wrong kind.
minic::Function ApplyRename(const minic::Function& fn, const minic::NodePath& site,
                            const std::string& fresh_name);
minic::Function ApplyOperandSwap(const minic::Function& fn, const minic::NodePath& site);
minic::Function ApplyStatementSwap(const minic::Function& fn, const minic::NodePath& site);
minic::Function ApplyLoopExchange(const minic::Function& fn, const minic::NodePath& site);
minic::Function ApplyBlockSwap(const minic::Function& fn, const minic::NodePath& site);
minic::Function ApplySwitchToIf(const minic::Function& fn, const minic::NodePath& site);

// Condition that is true exactly when `cond` is false. Relational operators
// are inverted in place, anything else is wrapped in `!`.
minic::Expr Negate(const minic::Expr& cond);

struct AugmentConfig {
  double per_op_probability = 0.5;
  std::uint64_t rng_seed = 0;
  // Fresh identifiers for renaming. Empty means the built-in pool v0..v9999.
  std::vector<std::string> vocabulary;
};

struct AugmentResult {
  minic::Function function;
  std::vector<Op> applied;
};

// Walks the site list in order; at each site, with probability
// per_op_probability, applies one uniformly chosen applicable operator and
// recomputes the site list. Fully determined by (fn, config).
AugmentResult Augment(const minic::Function& fn, const AugmentConfig& config);

}  // namespace vulnlens::transforms
