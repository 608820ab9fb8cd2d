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

#include <cctype>

#include "rules.h"
#include "vulnlens/common/error.h"
#include "vulnlens/common/rng.h"
#include "vulnlens/minic/token.h"
#include "vulnlens/transforms/transforms.h"

namespace vulnlens::transforms {

using namespace minic;

namespace {

void RenameRefs(NodeRef node, const std::string& from, const std::string& to) {
  if (auto* e = std::get_if<Expr*>(&node)) {
    if (auto* id = std::get_if<Ident>(&(*e)->node); id && id->name == from) id->name = to;
    if (auto* idx = std::get_if<Index>(&(*e)->node); idx && idx->array == from) idx->array = to;
  } else if (auto* s = std::get_if<Stmt*>(&node)) {
    if (auto* d = std::get_if<Decl>(&(*s)->node); d && d->name == from) d->name = to;
  }
  for (NodeRef child : Children(node)) RenameRefs(child, from, to);
}

void RenameCallee(NodeRef node, const std::string& from, const std::string& to) {
  if (auto* e = std::get_if<Expr*>(&node)) {
    if (auto* call = std::get_if<Call>(&(*e)->node); call && call->callee == from) {
      call->callee = to;
    }
  }
  for (NodeRef child : Children(node)) RenameCallee(child, from, to);
}

bool IsIdentifier(const std::string& name) {
  if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) {
    return false;
  }
  for (char c : name) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return !IsKeyword(name);
}

Stmt& StmtAt(Function& fn, const NodePath& path, std::string_view what) {
  NodeRef node = Resolve(fn, path);
  auto* stmt = std::get_if<Stmt*>(&node);
  if (!stmt) throw SiteError("site " + PathToString(path) + " is not a " + std::string(what));
  return **stmt;
}

BinaryOp Mirror(BinaryOp op) {
  switch (op) {
    case BinaryOp::kLt: return BinaryOp::kGt;
    case BinaryOp::kGt: return BinaryOp::kLt;
    case BinaryOp::kLe: return BinaryOp::kGe;
    case BinaryOp::kGe: return BinaryOp::kLe;
    default: return op;
  }
}

BinaryOp Invert(BinaryOp op) {
  switch (op) {
    case BinaryOp::kLt: return BinaryOp::kGe;
    case BinaryOp::kGe: return BinaryOp::kLt;
    case BinaryOp::kGt: return BinaryOp::kLe;
    case BinaryOp::kLe: return BinaryOp::kGt;
    case BinaryOp::kEq: return BinaryOp::kNe;
    case BinaryOp::kNe: return BinaryOp::kEq;
    default: return op;
  }
}

Block WithoutTrailingBreak(Block block) {
  if (!block.stmts.empty() && block.stmts.back().Is<Break>()) block.stmts.pop_back();
  return block;
}

}  // namespace

Expr Negate(const Expr& cond) {
  if (auto* bin = std::get_if<Binary>(&cond.node); bin && IsRelational(bin->op)) {
    Expr out = cond;
    out.As<Binary>().op = Invert(bin->op);
    return out;
  }
  return MakeUnary(UnaryOp::kNot, cond);
}

Function ApplyRename(const Function& fn, const NodePath& site, const std::string& fresh_name) {
  if (!IsIdentifier(fresh_name) || fresh_name == kReadInt || fresh_name == kPrintInt ||
      AllIdentifiers(fn).count(fresh_name)) {
    throw CollisionError("name '" + fresh_name + "' is already bound or not an identifier");
  }
  Function out = fn;
  NodeRef node = Resolve(out, site);
  if (std::holds_alternative<Function*>(node)) {
    const std::string old = out.name;
    out.name = fresh_name;
    RenameCallee(&out, old, fresh_name);
    return out;
  }
  if (auto* param = std::get_if<Param*>(&node)) {
    const std::string old = (*param)->name;
    (*param)->name = fresh_name;
    RenameRefs(&out.body, old, fresh_name);
    return out;
  }
  auto* stmt = std::get_if<Stmt*>(&node);
  if (!stmt || !(*stmt)->Is<Decl>()) {
    throw SiteError("site " + PathToString(site) + " is not a declaration");
  }
  const std::string old = (*stmt)->As<Decl>().name;
  const NodePath parent_path(site.begin(), site.end() - 1);
  NodeRef parent = Resolve(out, parent_path);
  if (auto* block = std::get_if<Block*>(&parent)) {
    // The declaration is visible from its own statement to the end of the block.
    for (std::size_t i = static_cast<std::size_t>(site.back()); i < (*block)->stmts.size(); ++i) {
      RenameRefs(&(*block)->stmts[i], old, fresh_name);
    }
  } else {
    // for-loop initializer: scoped to the loop.
    RenameRefs(parent, old, fresh_name);
  }
  return out;
}

Function ApplyOperandSwap(const Function& fn, const NodePath& site) {
  Function out = fn;
  NodeRef node = Resolve(out, site);
  auto* expr = std::get_if<Expr*>(&node);
  auto* bin = expr ? std::get_if<Binary>(&(*expr)->node) : nullptr;
  if (!bin || !(IsRelational(bin->op) || IsLogical(bin->op))) {
    throw SiteError("site " + PathToString(site) + " is not a relational or logical operation");
  }
  if (!internal::IsSwappableOperandPair(*bin)) {
    throw PurityError("operands of '" + std::string(Spelling(bin->op)) + "' at " +
                      PathToString(site) + " may have side effects or trap");
  }
  std::swap(bin->lhs, bin->rhs);
  bin->op = Mirror(bin->op);
  return out;
}

Function ApplyStatementSwap(const Function& fn, const NodePath& site) {
  if (site.empty()) throw SiteError("statement swap needs a statement site");
  Function out = fn;
  const NodePath parent_path(site.begin(), site.end() - 1);
  NodeRef parent = Resolve(out, parent_path);
  auto* block = std::get_if<Block*>(&parent);
  const auto idx = static_cast<std::size_t>(site.back());
  if (!block || idx + 1 >= (*block)->stmts.size()) {
    throw SiteError("site " + PathToString(site) + " has no following statement in its block");
  }
  auto& stmts = (*block)->stmts;
  const std::string reason = internal::StatementDependency(stmts[idx], stmts[idx + 1]);
  if (!reason.empty()) {
    throw DependencyError("cannot swap statements at " + PathToString(site) + ": " + reason);
  }
  std::swap(stmts[idx], stmts[idx + 1]);
  return out;
}

Function ApplyLoopExchange(const Function& fn, const NodePath& site) {
  Function out = fn;
  Stmt& stmt = StmtAt(out, site, "loop");
  if (auto* loop = std::get_if<For>(&stmt.node)) {
    // for (init; cond; update) { body }  =>  { init; while (cond) { body update; } }
    While lowered;
    lowered.cond = loop->cond ? *loop->cond : MakeInt(1);
    lowered.body = loop->body;
    if (loop->update) lowered.body.stmts.push_back(**loop->update);
    Block wrapper;
    if (loop->init) wrapper.stmts.push_back(**loop->init);
    wrapper.stmts.push_back(MakeStmt(std::move(lowered)));
    stmt = MakeStmt(std::move(wrapper));
    return out;
  }
  if (auto* loop = std::get_if<While>(&stmt.node)) {
    For raised;
    raised.cond = loop->cond;
    raised.body = loop->body;
    stmt = MakeStmt(std::move(raised));
    return out;
  }
  throw SiteError("site " + PathToString(site) + " is not a loop");
}

Function ApplyBlockSwap(const Function& fn, const NodePath& site) {
  Function out = fn;
  Stmt& stmt = StmtAt(out, site, "if statement");
  auto* branch = std::get_if<If>(&stmt.node);
  if (!branch) throw SiteError("site " + PathToString(site) + " is not an if statement");
  if (!branch->else_block) {
    throw NoElseError("if statement at " + PathToString(site) + " has no else block");
  }
  branch->cond = Negate(branch->cond);
  std::swap(branch->then_block, *branch->else_block);
  return out;
}

Function ApplySwitchToIf(const Function& fn, const NodePath& site) {
  Function out = fn;
  Stmt& stmt = StmtAt(out, site, "switch statement");
  auto* sw = std::get_if<Switch>(&stmt.node);
  if (!sw) throw SiteError("site " + PathToString(site) + " is not a switch statement");
  const std::string reason = internal::SwitchFallthrough(*sw);
  if (!reason.empty()) {
    throw FallthroughError("switch at " + PathToString(site) + ": " + reason);
  }
  // Build the chain from the last case backwards.
  std::optional<Block> tail;
  if (sw->default_block) tail = WithoutTrailingBreak(*sw->default_block);
  if (sw->cases.empty()) {
    Block block = tail ? std::move(*tail) : Block{};
    // The scrutinee is still evaluated once when it could trap.
    if (MayTrap(sw->scrutinee)) {
      block.stmts.insert(block.stmts.begin(), MakeStmt(ExprStmt{sw->scrutinee}));
    }
    stmt = MakeStmt(std::move(block));
    return out;
  }
  std::optional<Stmt> chain;
  for (auto it = sw->cases.rbegin(); it != sw->cases.rend(); ++it) {
    If branch;
    const Expr label = it->label < 0 ? MakeUnary(UnaryOp::kNeg, MakeInt(-it->label))
                                     : MakeInt(it->label);
    branch.cond = MakeBinary(BinaryOp::kEq, sw->scrutinee, label);
    branch.then_block = WithoutTrailingBreak(it->body);
    if (chain) {
      branch.else_block = MakeBlock({std::move(*chain)});
    } else if (tail) {
      branch.else_block = std::move(*tail);
    }
    chain = MakeStmt(std::move(branch));
  }
  stmt = std::move(*chain);
  return out;
}

namespace {

std::string FreshName(const Function& fn, const AugmentConfig& config, Rng& rng) {
  const std::set<std::string> taken = AllIdentifiers(fn);
  const std::size_t pool = config.vocabulary.empty() ? 10000 : config.vocabulary.size();
  auto name_at = [&](std::size_t i) {
    return config.vocabulary.empty() ? "v" + std::to_string(i) : config.vocabulary[i];
  };
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::string candidate = name_at(rng.Index(pool));
    if (!taken.count(candidate)) return candidate;
  }
  for (std::size_t i = 0; i < pool; ++i) {
    if (!taken.count(name_at(i))) return name_at(i);
  }
  throw CollisionError("renaming vocabulary exhausted");
}

Function ApplyOp(const Function& fn, const NodePath& path, Op op, const AugmentConfig& config,
                 Rng& rng) {
  switch (op) {
    case Op::kFunctionRename:
    case Op::kVariableRename: return ApplyRename(fn, path, FreshName(fn, config, rng));
    case Op::kOperandSwap: return ApplyOperandSwap(fn, path);
    case Op::kStatementSwap: return ApplyStatementSwap(fn, path);
    case Op::kLoopExchange: return ApplyLoopExchange(fn, path);
    case Op::kBlockSwap: return ApplyBlockSwap(fn, path);
    case Op::kSwitchToIf: return ApplySwitchToIf(fn, path);
  }
  return fn;
}

}  // namespace

AugmentResult Augment(const Function& fn, const AugmentConfig& config) {
  if (config.per_op_probability < 0.0 || config.per_op_probability > 1.0) {
    throw ConfigError("augmentation probability must lie in [0, 1]");
  }
  Rng rng(config.rng_seed);
  AugmentResult result{fn, {}};
  std::vector<Site> sites = FindSites(result.function);
  // Rewrites can add sites (a lowered for-loop exposes a while-loop), so the
  // walk is bounded by the initial site count.
  const std::size_t max_visits = 4 * sites.size() + 8;
  std::size_t visits = 0;
  for (std::size_t k = 0; k < sites.size() && visits < max_visits; ++k, ++visits) {
    if (!rng.Bernoulli(config.per_op_probability)) continue;
    const Site& site = sites[k];
    const Op op = site.applicable_ops[rng.Index(site.applicable_ops.size())];
    try {
      result.function = ApplyOp(result.function, site.path, op, config, rng);
      result.applied.push_back(op);
      sites = FindSites(result.function);
    } catch (const Error&) {
      // Precondition no longer holds at this site; skip it.
    }
  }
  return result;
}

}  // namespace vulnlens::transforms
