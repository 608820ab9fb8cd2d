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

#include "vulnlens/minic/ast.h"

namespace vulnlens::minic {

std::string_view Spelling(UnaryOp op) { return op == UnaryOp::kNeg ? "-" : "!"; }

std::string_view Spelling(BinaryOp op) {
  switch (op) {
    case BinaryOp::kAdd: return "+";
    case BinaryOp::kSub: return "-";
    case BinaryOp::kMul: return "*";
    case BinaryOp::kDiv: return "/";
    case BinaryOp::kMod: return "%";
    case BinaryOp::kLt: return "<";
    case BinaryOp::kLe: return "<=";
    case BinaryOp::kGt: return ">";
    case BinaryOp::kGe: return ">=";
    case BinaryOp::kEq: return "==";
    case BinaryOp::kNe: return "!=";
    case BinaryOp::kAnd: return "&&";
    case BinaryOp::kOr: return "||";
  }
  return "?";
}

int Precedence(BinaryOp op) {
  switch (op) {
    case BinaryOp::kOr: return 1;
    case BinaryOp::kAnd: return 2;
    case BinaryOp::kEq:
    case BinaryOp::kNe: return 3;
    case BinaryOp::kLt:
    case BinaryOp::kLe:
    case BinaryOp::kGt:
    case BinaryOp::kGe: return 4;
    case BinaryOp::kAdd:
    case BinaryOp::kSub: return 5;
    case BinaryOp::kMul:
    case BinaryOp::kDiv:
    case BinaryOp::kMod: return 6;
  }
  return 0;
}

bool IsRelational(BinaryOp op) {
  switch (op) {
    case BinaryOp::kLt:
    case BinaryOp::kLe:
    case BinaryOp::kGt:
    case BinaryOp::kGe:
    case BinaryOp::kEq:
    case BinaryOp::kNe: return true;
    default: return false;
  }
}

bool IsLogical(BinaryOp op) { return op == BinaryOp::kAnd || op == BinaryOp::kOr; }

namespace {

template <typename T, typename F>
bool OptionalEqual(const std::optional<T>& a, const std::optional<T>& b, F&& eq) {
  if (a.has_value() != b.has_value()) return false;
  return !a.has_value() || eq(*a, *b);
}

bool OptionalStmtEqual(const std::optional<Box<Stmt>>& a, const std::optional<Box<Stmt>>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a.has_value() || StructurallyEqual(**a, **b);
}

bool ExprEq(const Expr& a, const Expr& b) { return StructurallyEqual(a, b); }
bool BlockEq(const Block& a, const Block& b) { return StructurallyEqual(a, b); }

}  // namespace

bool StructurallyEqual(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  if (auto* x = std::get_if<IntLit>(&a.node)) return x->value == b.As<IntLit>().value;
  if (auto* x = std::get_if<Ident>(&a.node)) return x->name == b.As<Ident>().name;
  if (auto* x = std::get_if<Index>(&a.node)) {
    const auto& y = b.As<Index>();
    return x->array == y.array && StructurallyEqual(*x->index, *y.index);
  }
  if (auto* x = std::get_if<Call>(&a.node)) {
    const auto& y = b.As<Call>();
    if (x->callee != y.callee || x->args.size() != y.args.size()) return false;
    for (std::size_t i = 0; i < x->args.size(); ++i) {
      if (!StructurallyEqual(x->args[i], y.args[i])) return false;
    }
    return true;
  }
  if (auto* x = std::get_if<Unary>(&a.node)) {
    const auto& y = b.As<Unary>();
    return x->op == y.op && StructurallyEqual(*x->operand, *y.operand);
  }
  const auto& x = a.As<Binary>();
  const auto& y = b.As<Binary>();
  return x.op == y.op && StructurallyEqual(*x.lhs, *y.lhs) && StructurallyEqual(*x.rhs, *y.rhs);
}

bool StructurallyEqual(const Block& a, const Block& b) {
  if (a.stmts.size() != b.stmts.size()) return false;
  for (std::size_t i = 0; i < a.stmts.size(); ++i) {
    if (!StructurallyEqual(a.stmts[i], b.stmts[i])) return false;
  }
  return true;
}

bool StructurallyEqual(const Stmt& a, const Stmt& b) {
  if (a.node.index() != b.node.index()) return false;
  if (auto* x = std::get_if<Decl>(&a.node)) {
    const auto& y = b.As<Decl>();
    return x->name == y.name && x->array_size == y.array_size &&
           OptionalEqual(x->init, y.init, ExprEq);
  }
  if (auto* x = std::get_if<Assign>(&a.node)) {
    const auto& y = b.As<Assign>();
    return StructurallyEqual(x->target, y.target) && StructurallyEqual(x->value, y.value);
  }
  if (auto* x = std::get_if<If>(&a.node)) {
    const auto& y = b.As<If>();
    return StructurallyEqual(x->cond, y.cond) && StructurallyEqual(x->then_block, y.then_block) &&
           OptionalEqual(x->else_block, y.else_block, BlockEq);
  }
  if (auto* x = std::get_if<While>(&a.node)) {
    const auto& y = b.As<While>();
    return StructurallyEqual(x->cond, y.cond) && StructurallyEqual(x->body, y.body);
  }
  if (auto* x = std::get_if<For>(&a.node)) {
    const auto& y = b.As<For>();
    return OptionalStmtEqual(x->init, y.init) && OptionalEqual(x->cond, y.cond, ExprEq) &&
           OptionalStmtEqual(x->update, y.update) && StructurallyEqual(x->body, y.body);
  }
  if (auto* x = std::get_if<Switch>(&a.node)) {
    const auto& y = b.As<Switch>();
    if (!StructurallyEqual(x->scrutinee, y.scrutinee) || x->cases.size() != y.cases.size()) {
      return false;
    }
    for (std::size_t i = 0; i < x->cases.size(); ++i) {
      if (x->cases[i].label != y.cases[i].label ||
          !StructurallyEqual(x->cases[i].body, y.cases[i].body)) {
        return false;
      }
    }
    return OptionalEqual(x->default_block, y.default_block, BlockEq);
  }
  if (a.Is<Break>()) return true;
  if (auto* x = std::get_if<Return>(&a.node)) {
    return OptionalEqual(x->value, b.As<Return>().value, ExprEq);
  }
  if (auto* x = std::get_if<ExprStmt>(&a.node)) {
    return StructurallyEqual(x->expr, b.As<ExprStmt>().expr);
  }
  return StructurallyEqual(a.As<Block>(), b.As<Block>());
}

bool StructurallyEqual(const Function& a, const Function& b) {
  if (a.name != b.name || a.params.size() != b.params.size()) return false;
  for (std::size_t i = 0; i < a.params.size(); ++i) {
    if (a.params[i].name != b.params[i].name ||
        a.params[i].array_size != b.params[i].array_size) {
      return false;
    }
  }
  return StructurallyEqual(a.body, b.body);
}

Expr MakeInt(std::int64_t value) { return Expr{IntLit{value}, {}}; }
Expr MakeIdent(std::string name) { return Expr{Ident{std::move(name)}, {}}; }
Expr MakeIndex(std::string array, Expr index) {
  return Expr{Index{std::move(array), Box<Expr>(std::move(index))}, {}};
}
Expr MakeCall(std::string callee, std::vector<Expr> args) {
  return Expr{Call{std::move(callee), std::move(args)}, {}};
}
Expr MakeUnary(UnaryOp op, Expr operand) {
  return Expr{Unary{op, Box<Expr>(std::move(operand))}, {}};
}
Expr MakeBinary(BinaryOp op, Expr lhs, Expr rhs) {
  return Expr{Binary{op, Box<Expr>(std::move(lhs)), Box<Expr>(std::move(rhs))}, {}};
}

Stmt MakeStmt(Decl decl) { return Stmt{std::move(decl), {}}; }
Stmt MakeStmt(Assign assign) { return Stmt{std::move(assign), {}}; }
Stmt MakeStmt(If stmt) { return Stmt{std::move(stmt), {}}; }
Stmt MakeStmt(While stmt) { return Stmt{std::move(stmt), {}}; }
Stmt MakeStmt(For stmt) { return Stmt{std::move(stmt), {}}; }
Stmt MakeStmt(Switch stmt) { return Stmt{std::move(stmt), {}}; }
Stmt MakeStmt(Break stmt) { return Stmt{stmt, {}}; }
Stmt MakeStmt(Return stmt) { return Stmt{std::move(stmt), {}}; }
Stmt MakeStmt(ExprStmt stmt) { return Stmt{std::move(stmt), {}}; }
Stmt MakeStmt(Block block) { return Stmt{std::move(block), {}}; }
Block MakeBlock(std::vector<Stmt> stmts) { return Block{std::move(stmts), {}}; }

}  // namespace vulnlens::minic
