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

#include "vulnlens/minic/ast_walk.h"

#include "vulnlens/common/error.h"

namespace vulnlens::minic {

namespace {

void ExprChildren(Expr& e, std::vector<NodeRef>& out) {
  if (auto* idx = std::get_if<Index>(&e.node)) {
    out.emplace_back(idx->index.get());
  } else if (auto* call = std::get_if<Call>(&e.node)) {
    for (Expr& a : call->args) out.emplace_back(&a);
  } else if (auto* un = std::get_if<Unary>(&e.node)) {
    out.emplace_back(un->operand.get());
  } else if (auto* bin = std::get_if<Binary>(&e.node)) {
    out.emplace_back(bin->lhs.get());
    out.emplace_back(bin->rhs.get());
  }
}

void StmtChildren(Stmt& s, std::vector<NodeRef>& out) {
  if (auto* d = std::get_if<Decl>(&s.node)) {
    if (d->init) out.emplace_back(&*d->init);
  } else if (auto* a = std::get_if<Assign>(&s.node)) {
    out.emplace_back(&a->target);
    out.emplace_back(&a->value);
  } else if (auto* i = std::get_if<If>(&s.node)) {
    out.emplace_back(&i->cond);
    out.emplace_back(&i->then_block);
    if (i->else_block) out.emplace_back(&*i->else_block);
  } else if (auto* w = std::get_if<While>(&s.node)) {
    out.emplace_back(&w->cond);
    out.emplace_back(&w->body);
  } else if (auto* f = std::get_if<For>(&s.node)) {
    if (f->init) out.emplace_back((*f->init).get());
    if (f->cond) out.emplace_back(&*f->cond);
    if (f->update) out.emplace_back((*f->update).get());
    out.emplace_back(&f->body);
  } else if (auto* sw = std::get_if<Switch>(&s.node)) {
    out.emplace_back(&sw->scrutinee);
    for (SwitchCase& c : sw->cases) out.emplace_back(&c.body);
    if (sw->default_block) out.emplace_back(&*sw->default_block);
  } else if (auto* r = std::get_if<Return>(&s.node)) {
    if (r->value) out.emplace_back(&*r->value);
  } else if (auto* e = std::get_if<ExprStmt>(&s.node)) {
    out.emplace_back(&e->expr);
  } else if (auto* b = std::get_if<Block>(&s.node)) {
    out.emplace_back(b);
  }
}

ConstNodeRef ToConst(NodeRef ref) {
  return std::visit([](auto* p) -> ConstNodeRef { return p; }, ref);
}

NodeRef ToMutable(ConstNodeRef ref) {
  return std::visit(
      [](auto* p) -> NodeRef {
        using T = std::remove_const_t<std::remove_pointer_t<decltype(p)>>;
        return const_cast<T*>(p);
      },
      ref);
}

void WalkImpl(ConstNodeRef node, NodePath& path,
              const std::function<void(ConstNodeRef, const NodePath&)>& visit) {
  visit(node, path);
  const auto kids = Children(node);
  for (std::size_t i = 0; i < kids.size(); ++i) {
    path.push_back(static_cast<int>(i));
    WalkImpl(kids[i], path, visit);
    path.pop_back();
  }
}

}  // namespace

std::vector<NodeRef> Children(NodeRef node) {
  std::vector<NodeRef> out;
  if (auto* fn = std::get_if<Function*>(&node)) {
    for (Param& p : (*fn)->params) out.emplace_back(&p);
    out.emplace_back(&(*fn)->body);
  } else if (auto* block = std::get_if<Block*>(&node)) {
    for (Stmt& s : (*block)->stmts) out.emplace_back(&s);
  } else if (auto* stmt = std::get_if<Stmt*>(&node)) {
    StmtChildren(**stmt, out);
  } else if (auto* expr = std::get_if<Expr*>(&node)) {
    ExprChildren(**expr, out);
  }
  return out;
}

std::vector<ConstNodeRef> Children(ConstNodeRef node) {
  std::vector<ConstNodeRef> out;
  for (NodeRef child : Children(ToMutable(node))) out.push_back(ToConst(child));
  return out;
}

NodeRef Resolve(Function& fn, const NodePath& path) {
  NodeRef node = &fn;
  for (int index : path) {
    auto kids = Children(node);
    if (index < 0 || static_cast<std::size_t>(index) >= kids.size()) {
      throw SiteError("path " + PathToString(path) + " does not name a node");
    }
    node = kids[static_cast<std::size_t>(index)];
  }
  return node;
}

ConstNodeRef Resolve(const Function& fn, const NodePath& path) {
  return ToConst(Resolve(const_cast<Function&>(fn), path));
}

void Walk(const Function& fn, const std::function<void(ConstNodeRef, const NodePath&)>& visit) {
  NodePath path;
  WalkImpl(&fn, path, visit);
}

std::string PathToString(const NodePath& path) {
  std::string out = "/";
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += '/';
    out += std::to_string(path[i]);
  }
  return out;
}

void CollectReads(const Expr& expr, std::set<std::string>& out) {
  if (auto* id = std::get_if<Ident>(&expr.node)) {
    out.insert(id->name);
  } else if (auto* idx = std::get_if<Index>(&expr.node)) {
    out.insert(idx->array);
    CollectReads(*idx->index, out);
  } else if (auto* call = std::get_if<Call>(&expr.node)) {
    for (const Expr& a : call->args) CollectReads(a, out);
  } else if (auto* un = std::get_if<Unary>(&expr.node)) {
    CollectReads(*un->operand, out);
  } else if (auto* bin = std::get_if<Binary>(&expr.node)) {
    CollectReads(*bin->lhs, out);
    CollectReads(*bin->rhs, out);
  }
}

bool ContainsCall(const Expr& expr) {
  if (expr.Is<Call>()) return true;
  for (ConstNodeRef child : Children(ConstNodeRef(&expr))) {
    if (ContainsCall(*std::get<const Expr*>(child))) return true;
  }
  return false;
}

bool MayTrap(const Expr& expr) {
  if (expr.Is<Call>() || expr.Is<Index>()) return true;
  if (auto* bin = std::get_if<Binary>(&expr.node)) {
    if (bin->op == BinaryOp::kDiv || bin->op == BinaryOp::kMod) return true;
  }
  for (ConstNodeRef child : Children(ConstNodeRef(&expr))) {
    if (MayTrap(*std::get<const Expr*>(child))) return true;
  }
  return false;
}

DefUse SimpleDefUse(const Stmt& stmt) {
  DefUse du;
  if (auto* d = std::get_if<Decl>(&stmt.node)) {
    du.defs.insert(d->name);
    if (d->init) CollectReads(*d->init, du.uses);
  } else if (auto* a = std::get_if<Assign>(&stmt.node)) {
    CollectReads(a->value, du.uses);
    if (auto* id = std::get_if<Ident>(&a->target.node)) {
      du.defs.insert(id->name);
    } else {
      const auto& idx = a->target.As<Index>();
      du.defs.insert(idx.array);
      CollectReads(*idx.index, du.uses);
    }
  } else if (auto* e = std::get_if<ExprStmt>(&stmt.node)) {
    CollectReads(e->expr, du.uses);
  } else if (auto* r = std::get_if<Return>(&stmt.node)) {
    if (r->value) CollectReads(*r->value, du.uses);
  }
  return du;
}

std::set<std::string> AllIdentifiers(const Function& fn) {
  std::set<std::string> names{fn.name};
  Walk(fn, [&](ConstNodeRef node, const NodePath&) {
    if (auto* p = std::get_if<const Param*>(&node)) {
      names.insert((*p)->name);
    } else if (auto* s = std::get_if<const Stmt*>(&node)) {
      if (auto* d = std::get_if<Decl>(&(*s)->node)) names.insert(d->name);
    } else if (auto* e = std::get_if<const Expr*>(&node)) {
      if (auto* id = std::get_if<Ident>(&(*e)->node)) names.insert(id->name);
      if (auto* idx = std::get_if<Index>(&(*e)->node)) names.insert(idx->array);
      if (auto* call = std::get_if<Call>(&(*e)->node)) names.insert(call->callee);
    }
  });
  return names;
}

}  // namespace vulnlens::minic
