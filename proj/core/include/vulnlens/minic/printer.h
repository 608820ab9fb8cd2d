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

#include <string>

#include "vulnlens/minic/ast.h"

namespace vulnlens::minic {

// Canonical source text: two-space indentation, braces on every body, one
// statement per line, minimal parentheses. Re-parsing the output yields a
// structurally equal tree.
std::string PrettyPrint(const Function& fn);

std::string PrintExpr(const Expr& expr);

// One-line rendering of a simple statement (Decl, Assign, ExprStmt, Return,
// Break) without a trailing semicolon.
std::string PrintSimpleStmt(const Stmt& stmt);

}  // namespace vulnlens::minic
