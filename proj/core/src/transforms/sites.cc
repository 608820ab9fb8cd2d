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

#include <algorithm>

#include "rules.h"
#include "vulnlens/transforms/transforms.h"

namespace vulnlens::transforms {

using namespace minic;

std::string_view OpCode(Op op) {
  switch (op) {
    case Op::kFunctionRename: return "FR";
    case Op::kVariableRename: return "VR";
    case Op::kOperandSwap: return "OS";
    case Op::kStatementSwap: return "SP";
    case Op::kLoopExchange: return "LX";
    case Op::kBlockSwap: return "BS";
    case Op::kSwitchToIf: return "SI";
  }
  return "?";
}

namespace internal {

bool IsSwappableOperandPair(const Binary& bin) {
  if (!IsRelational(bin.op) && !IsLogical(bin.op)) return false;
  // Swapping changes evaluation order, so neither side may have effects or
  // trap; && and || would otherwise also change which side is skipped.
  return !MayTrap(*bin.lhs) && !MayTrap(*bin.rhs);
}

namespace {

bool AnyExprChild(const Stmt& s, bool (*pred)(const Expr&)) {
  for (ConstNodeRef child : Children(ConstNodeRef(&s))) {
    if (auto* e = std::get_if<const Expr*>(&child); e && pred(**e)) return true;
  }
  return false;
}

}  // namespace

std::string StatementDependency(const Stmt& first, const Stmt& second) {
  auto simple = [](const Stmt& s) {
    return s.Is<Decl>() || s.Is<Assign>() || s.Is<ExprStmt>();
  };
  if (!simple(first) || !simple(second)) return "control flow or block statement";
  if (AnyExprChild(first, ContainsCall) || AnyExprChild(second, ContainsCall)) {
    return "statement contains a call";
  }
  const DefUse a = SimpleDefUse(first);
  const DefUse b = SimpleDefUse(second);
  auto intersects = [](const std::set<std::string>& x, const std::set<std::string>& y) {
    return std::any_of(x.begin(), x.end(), [&](const std::string& n) { return y.count(n) > 0; });
  };
  if (intersects(a.defs, b.defs) || intersects(a.defs, b.uses) || intersects(b.defs, a.uses)) {
    return "def/use sets intersect";
  }
  // Two trapping statements could trade one trap kind for another.
  if (AnyExprChild(first, MayTrap) && AnyExprChild(second, MayTrap)) {
    return "both statements may trap";
  }
  return {};
}

namespace {

// Counts break statements of `block` that exit the enclosing switch.
void CountSwitchBreaks(const Block& block, int& count) {
  for (const Stmt& s : block.stmts) {
    if (s.Is<Break>()) {
      ++count;
    } else if (auto* i = std::get_if<If>(&s.node)) {
      CountSwitchBreaks(i->then_block, count);
      if (i->else_block) CountSwitchBreaks(*i->else_block, count);
    } else if (auto* b = std::get_if<Block>(&s.node)) {
      CountSwitchBreaks(*b, count);
    }
    // Breaks inside nested loops or switches target those constructs.
  }
}

bool EndsWithOnlyBreak(const Block& block) {
  if (block.stmts.empty() || !block.stmts.back().Is<Break>()) return false;
  int count = 0;
  CountSwitchBreaks(block, count);
  return count == 1;
}

}  // namespace

std::string SwitchFallthrough(const Switch& sw) {
  if (ContainsCall(sw.scrutinee)) return "scrutinee has side effects";
  for (const SwitchCase& c : sw.cases) {
    if (!EndsWithOnlyBreak(c.body)) {
      return "case " + std::to_string(c.label) + " does not end with its only break";
    }
  }
  if (sw.default_block) {
    int count = 0;
    CountSwitchBreaks(*sw.default_block, count);
    const bool trailing =
        !sw.default_block->stmts.empty() && sw.default_block->stmts.back().Is<Break>();
    if (count > (trailing ? 1 : 0)) return "default exits early";
  }
  return {};
}

}  // namespace internal

std::vector<Site> FindSites(const Function& fn) {
  std::vector<Site> sites;
  Walk(fn, [&](ConstNodeRef node, const NodePath& path) {
    Site site{path, {}};
    if (std::holds_alternative<const Function*>(node)) {
      site.applicable_ops.push_back(Op::kFunctionRename);
    } else if (std::holds_alternative<const Param*>(node)) {
      site.applicable_ops.push_back(Op::kVariableRename);
    } else if (auto* sp = std::get_if<const Stmt*>(&node)) {
      const Stmt& stmt = **sp;
      if (stmt.Is<Decl>()) site.applicable_ops.push_back(Op::kVariableRename);
      if (!path.empty()) {
        const NodePath parent(path.begin(), path.end() - 1);
        const ConstNodeRef parent_node = Resolve(fn, parent);
        if (auto* block = std::get_if<const Block*>(&parent_node)) {
          const auto idx = static_cast<std::size_t>(path.back());
          if (idx + 1 < (*block)->stmts.size() &&
              internal::StatementDependency(stmt, (*block)->stmts[idx + 1]).empty()) {
            site.applicable_ops.push_back(Op::kStatementSwap);
          }
        }
      }
      if (stmt.Is<For>() || stmt.Is<While>()) site.applicable_ops.push_back(Op::kLoopExchange);
      if (auto* i = std::get_if<If>(&stmt.node); i && i->else_block) {
        site.applicable_ops.push_back(Op::kBlockSwap);
      }
      if (auto* sw = std::get_if<Switch>(&stmt.node);
          sw && internal::SwitchFallthrough(*sw).empty()) {
        site.applicable_ops.push_back(Op::kSwitchToIf);
      }
    } else if (auto* ep = std::get_if<const Expr*>(&node)) {
      if (auto* bin = std::get_if<Binary>(&(*ep)->node);
          bin && internal::IsSwappableOperandPair(*bin)) {
        site.applicable_ops.push_back(Op::kOperandSwap);
      }
    }
    if (!site.applicable_ops.empty()) sites.push_back(std::move(site));
  });
  return sites;
}

}  // namespace vulnlens::transforms
