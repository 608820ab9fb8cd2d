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

#include "vulnlens/minic/printer.h"

#include <sstream>

namespace vulnlens::minic {

namespace {

void AppendExpr(const Expr& expr, std::string& out);

void AppendOperand(const Expr& expr, bool parenthesize, std::string& out) {
  if (parenthesize) out += '(';
  AppendExpr(expr, out);
  if (parenthesize) out += ')';
}

void AppendExpr(const Expr& expr, std::string& out) {
  if (auto* lit = std::get_if<IntLit>(&expr.node)) {
    out += std::to_string(lit->value);
  } else if (auto* id = std::get_if<Ident>(&expr.node)) {
    out += id->name;
  } else if (auto* idx = std::get_if<Index>(&expr.node)) {
    out += idx->array;
    out += '[';
    AppendExpr(*idx->index, out);
    out += ']';
  } else if (auto* call = std::get_if<Call>(&expr.node)) {
    out += call->callee;
    out += '(';
    for (std::size_t i = 0; i < call->args.size(); ++i) {
      if (i) out += ", ";
      AppendExpr(call->args[i], out);
    }
    out += ')';
  } else if (auto* un = std::get_if<Unary>(&expr.node)) {
    out += Spelling(un->op);
    const bool paren = un->operand->Is<Binary>() || un->operand->Is<Unary>();
    AppendOperand(*un->operand, paren, out);
  } else {
    const auto& bin = expr.As<Binary>();
    const int prec = Precedence(bin.op);
    const bool lhs_paren = bin.lhs->Is<Binary>() && Precedence(bin.lhs->As<Binary>().op) < prec;
    const bool rhs_paren = bin.rhs->Is<Binary>() && Precedence(bin.rhs->As<Binary>().op) <= prec;
    AppendOperand(*bin.lhs, lhs_paren, out);
    out += ' ';
    out += Spelling(bin.op);
    out += ' ';
    AppendOperand(*bin.rhs, rhs_paren, out);
  }
}

class Printer {
 public:
  std::string Run(const Function& fn) {
    out_ << "int " << fn.name << "(";
    for (std::size_t i = 0; i < fn.params.size(); ++i) {
      if (i) out_ << ", ";
      out_ << "int " << fn.params[i].name;
      if (fn.params[i].array_size) out_ << "[" << *fn.params[i].array_size << "]";
    }
    out_ << ") {\n";
    Body(fn.body, 1);
    out_ << "}\n";
    return out_.str();
  }

 private:
  void Indent(int depth) {
    for (int i = 0; i < depth; ++i) out_ << "  ";
  }

  void Body(const Block& block, int depth) {
    for (const Stmt& stmt : block.stmts) Statement(stmt, depth);
  }

  void Statement(const Stmt& stmt, int depth) {
    if (auto* s = std::get_if<If>(&stmt.node)) {
      Indent(depth);
      out_ << "if (" << PrintExpr(s->cond) << ") {\n";
      Body(s->then_block, depth + 1);
      Indent(depth);
      if (s->else_block) {
        out_ << "} else {\n";
        Body(*s->else_block, depth + 1);
        Indent(depth);
      }
      out_ << "}\n";
    } else if (auto* s = std::get_if<While>(&stmt.node)) {
      Indent(depth);
      out_ << "while (" << PrintExpr(s->cond) << ") {\n";
      Body(s->body, depth + 1);
      Indent(depth);
      out_ << "}\n";
    } else if (auto* s = std::get_if<For>(&stmt.node)) {
      Indent(depth);
      out_ << "for (";
      if (s->init) out_ << PrintSimpleStmt(**s->init);
      out_ << ";";
      if (s->cond) out_ << " " << PrintExpr(*s->cond);
      out_ << ";";
      if (s->update) out_ << " " << PrintSimpleStmt(**s->update);
      out_ << ") {\n";
      Body(s->body, depth + 1);
      Indent(depth);
      out_ << "}\n";
    } else if (auto* s = std::get_if<Switch>(&stmt.node)) {
      Indent(depth);
      out_ << "switch (" << PrintExpr(s->scrutinee) << ") {\n";
      for (const SwitchCase& c : s->cases) {
        Indent(depth + 1);
        out_ << "case " << c.label << ":\n";
        Body(c.body, depth + 2);
      }
      if (s->default_block) {
        Indent(depth + 1);
        out_ << "default:\n";
        Body(*s->default_block, depth + 2);
      }
      Indent(depth);
      out_ << "}\n";
    } else if (auto* s = std::get_if<Block>(&stmt.node)) {
      Indent(depth);
      out_ << "{\n";
      Body(*s, depth + 1);
      Indent(depth);
      out_ << "}\n";
    } else {
      Indent(depth);
      out_ << PrintSimpleStmt(stmt) << ";\n";
    }
  }

  std::ostringstream out_;
};

}  // namespace

std::string PrintExpr(const Expr& expr) {
  std::string out;
  AppendExpr(expr, out);
  return out;
}

std::string PrintSimpleStmt(const Stmt& stmt) {
  if (auto* d = std::get_if<Decl>(&stmt.node)) {
    std::string out = "int " + d->name;
    if (d->array_size) out += "[" + std::to_string(*d->array_size) + "]";
    if (d->init) out += " = " + PrintExpr(*d->init);
    return out;
  }
  if (auto* a = std::get_if<Assign>(&stmt.node)) {
    return PrintExpr(a->target) + " = " + PrintExpr(a->value);
  }
  if (auto* e = std::get_if<ExprStmt>(&stmt.node)) return PrintExpr(e->expr);
  if (auto* r = std::get_if<Return>(&stmt.node)) {
    return r->value ? "return " + PrintExpr(*r->value) : std::string("return");
  }
  if (stmt.Is<Break>()) return "break";
  return {};
}

std::string PrettyPrint(const Function& fn) { return Printer().Run(fn); }

}  // namespace vulnlens::minic
