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
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vulnlens/common/box.h"
#include "vulnlens/minic/source_span.h"

namespace vulnlens::minic {

enum class UnaryOp { kNeg, kNot };

enum class BinaryOp {
  kAdd, kSub, kMul, kDiv, kMod,
  kLt, kLe, kGt, kGe, kEq, kNe,
  kAnd, kOr,
};

std::string_view Spelling(UnaryOp op);
std::string_view Spelling(BinaryOp op);
// Binding strength, higher binds tighter. All binary operators are left-associative.
int Precedence(BinaryOp op);
bool IsRelational(BinaryOp op);  // < <= > >= == !=
bool IsLogical(BinaryOp op);     // && ||

// Intrinsics understood by the interpreter.
inline constexpr std::string_view kReadInt = "read_int";
inline constexpr std::string_view kPrintInt = "print_int";

struct Expr;

struct IntLit {
  std::int64_t value = 0;
};
struct Ident {
  std::string name;
};
struct Index {
  std::string array;
  Box<Expr> index;
};
struct Call {
  std::string callee;
  std::vector<Expr> args;
};
struct Unary {
  UnaryOp op = UnaryOp::kNeg;
  Box<Expr> operand;
};
struct Binary {
  BinaryOp op = BinaryOp::kAdd;
  Box<Expr> lhs;
  Box<Expr> rhs;
};

struct Expr {
  std::variant<IntLit, Ident, Index, Call, Unary, Binary> node;
  SourceSpan span;

  template <typename T>
  bool Is() const { return std::holds_alternative<T>(node); }
  template <typename T>
  const T& As() const { return std::get<T>(node); }
  template <typename T>
  T& As() { return std::get<T>(node); }
};

struct Stmt;

struct Block {
  std::vector<Stmt> stmts;
  SourceSpan span;
};

struct Decl {
  std::string name;
  std::optional<std::int64_t> array_size;
  std::optional<Expr> init;
};
// `target` is an Ident or an Index expression.
struct Assign {
  Expr target;
  Expr value;
};
struct If {
  Expr cond;
  Block then_block;
  std::optional<Block> else_block;
  SourceSpan header;  // `if (cond)`
};
struct While {
  Expr cond;
  Block body;
  SourceSpan header;
};
// `init` is a Decl or Assign; `update` an Assign or ExprStmt.
struct For {
  std::optional<Box<Stmt>> init;
  std::optional<Expr> cond;
  std::optional<Box<Stmt>> update;
  Block body;
  SourceSpan header;
};
struct SwitchCase {
  std::int64_t label = 0;
  Block body;
  SourceSpan span;
};
struct Switch {
  Expr scrutinee;
  std::vector<SwitchCase> cases;
  std::optional<Block> default_block;
  SourceSpan header;
};
struct Break {};
struct Return {
  std::optional<Expr> value;
};
struct ExprStmt {
  Expr expr;
};

struct Stmt {
  std::variant<Decl, Assign, If, While, For, Switch, Break, Return, ExprStmt, Block> node;
  SourceSpan span;

  template <typename T>
  bool Is() const { return std::holds_alternative<T>(node); }
  template <typename T>
  const T& As() const { return std::get<T>(node); }
  template <typename T>
  T& As() { return std::get<T>(node); }
};

struct Param {
  std::string name;
  std::optional<std::int64_t> array_size;
  SourceSpan span;
};

struct Function {
  std::string name;
  std::vector<Param> params;
  Block body;
  SourceSpan span;
};

// Compares two trees ignoring source spans.
bool StructurallyEqual(const Expr& a, const Expr& b);
bool StructurallyEqual(const Stmt& a, const Stmt& b);
bool StructurallyEqual(const Block& a, const Block& b);
bool StructurallyEqual(const Function& a, const Function& b);

// Builders used by transformations and generators. Spans are left empty.
Expr MakeInt(std::int64_t value);
Expr MakeIdent(std::string name);
Expr MakeIndex(std::string array, Expr index);
Expr MakeCall(std::string callee, std::vector<Expr> args);
Expr MakeUnary(UnaryOp op, Expr operand);
Expr MakeBinary(BinaryOp op, Expr lhs, Expr rhs);
Stmt MakeStmt(Decl decl);
Stmt MakeStmt(Assign assign);
Stmt MakeStmt(If stmt);
Stmt MakeStmt(While stmt);
Stmt MakeStmt(For stmt);
Stmt MakeStmt(Switch stmt);
Stmt MakeStmt(Break stmt);
Stmt MakeStmt(Return stmt);
Stmt MakeStmt(ExprStmt stmt);
Stmt MakeStmt(Block block);
Block MakeBlock(std::vector<Stmt> stmts);

}  // namespace vulnlens::minic
