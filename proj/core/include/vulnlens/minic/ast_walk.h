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

#include <functional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "vulnlens/minic/ast.h"

namespace vulnlens::minic {

// Child indices from the function root to a node. Children are enumerated as:
//   Function: params..., body      Block: stmts...
//   Decl: [init]                   Assign: target, value
//   If: cond, then, [else]         While: cond, body
//   For: [init], [cond], [update], body
//   Switch: scrutinee, case bodies..., [default]
//   Return: [value]                ExprStmt: expr        Block stmt: block
//   Index: index                   Call: args...         Unary: operand
//   Binary: lhs, rhs
using NodePath = std::vector<int>;

using NodeRef = std::variant<Function*, Param*, Block*, Stmt*, Expr*>;
using ConstNodeRef =
    std::variant<const Function*, const Param*, const Block*, const Stmt*, const Expr*>;

std::vector<NodeRef> Children(NodeRef node);
std::vector<ConstNodeRef> Children(ConstNodeRef node);

// Throws SiteError when the path does not name a node.
NodeRef Resolve(Function& fn, const NodePath& path);
ConstNodeRef Resolve(const Function& fn, const NodePath& path);

// Pre-order traversal over every node.
void Walk(const Function& fn, const std::function<void(ConstNodeRef, const NodePath&)>& visit);

std::string PathToString(const NodePath& path);

// Names read by an expression (scalars and arrays alike).
void CollectReads(const Expr& expr, std::set<std::string>& out);
bool ContainsCall(const Expr& expr);
// True if evaluation can trap: indexing, division or modulo, or a call.
bool MayTrap(const Expr& expr);

// Read and written variable names of a simple statement, including reads
// hidden in index expressions of assignment targets.
struct DefUse {
  std::set<std::string> defs;
  std::set<std::string> uses;
};
DefUse SimpleDefUse(const Stmt& stmt);

// Every identifier spelled anywhere in the function: its name, parameters,
// declarations, variable references and callees.
std::set<std::string> AllIdentifiers(const Function& fn);

}  // namespace vulnlens::minic
