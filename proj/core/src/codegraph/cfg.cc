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

#include "vulnlens/codegraph/graph.h"
#include "vulnlens/minic/printer.h"
#include "vulnlens/minic/token.h"

namespace vulnlens::codegraph {
namespace {

using namespace minic;

constexpr int kEntryMarker = -1;

std::vector<std::string> TokenTexts(const std::string& text) {
  std::vector<std::string> out;
  for (const Token& t : Tokenize(text)) out.push_back(t.text);
  return out;
}

std::set<std::string> Reads(const Expr& expr) {
  std::set<std::string> out;
  CollectReads(expr, out);
  return out;
}

VarAccess SimpleAccess(const Stmt& stmt) {
  VarAccess access;
  if (auto* d = std::get_if<Decl>(&stmt.node)) {
    access.strong_defs.insert(d->name);
    if (d->init) CollectReads(*d->init, access.uses);
  } else if (auto* a = std::get_if<Assign>(&stmt.node)) {
    if (auto* id = std::get_if<Ident>(&a->target.node)) {
      access.strong_defs.insert(id->name);
    } else {
      const auto& idx = a->target.As<Index>();
      access.weak_defs.insert(idx.array);
      CollectReads(*idx.index, access.uses);
    }
    CollectReads(a->value, access.uses);
  } else if (auto* e = std::get_if<ExprStmt>(&stmt.node)) {
    CollectReads(e->expr, access.uses);
  } else if (auto* r = std::get_if<Return>(&stmt.node)) {
    if (r->value) CollectReads(*r->value, access.uses);
  }
  return access;
}

StmtKind SimpleKind(const Stmt& stmt) {
  if (stmt.Is<Decl>()) return StmtKind::kDecl;
  if (stmt.Is<Assign>()) return StmtKind::kAssign;
  if (stmt.Is<Return>()) return StmtKind::kReturn;
  if (stmt.Is<Break>()) return StmtKind::kBreak;
  return StmtKind::kExprStmt;
}

class CfgBuilder {
 public:
  Cfg Build(const Function& fn) {
    int prev_lead = -1;
    const std::vector<int> exits = FlowBlock(fn.body, {kEntryMarker}, prev_lead);
    (void)exits;
    if (cfg_.nodes.empty()) {
      std::string signature = "int " + fn.name + " (";
      for (std::size_t i = 0; i < fn.params.size(); ++i) {
        signature += (i ? ", int " : "int ") + fn.params[i].name;
      }
      AddNode(StmtKind::kEntry, fn.span, signature + ")", {}, {kEntryMarker});
    }
    return std::move(cfg_);
  }

 private:
  int AddNode(StmtKind kind, const SourceSpan& span, const std::string& text, VarAccess access,
              const std::vector<int>& preds) {
    const int id = static_cast<int>(cfg_.nodes.size());
    NodeInfo info;
    info.stmt_id = id;
    info.span = span;
    info.tokens = TokenTexts(text);
    info.kind = kind;
    cfg_.nodes.push_back(std::move(info));
    cfg_.access.push_back(std::move(access));
    cfg_.successors.emplace_back();
    cfg_.control_parent.push_back(control_);
    Link(preds, id);
    return id;
  }

  void Link(const std::vector<int>& preds, int target) {
    for (int p : preds) {
      if (p == kEntryMarker) {
        cfg_.entry = target;
        continue;
      }
      auto& succ = cfg_.successors[p];
      if (std::find(succ.begin(), succ.end(), target) == succ.end()) succ.push_back(target);
    }
  }

  void Sequence(int& prev_lead, int lead) {
    if (prev_lead >= 0) cfg_.sequence_pairs.emplace_back(prev_lead, lead);
    prev_lead = lead;
  }

  static std::vector<int> Union(std::vector<int> a, const std::vector<int>& b) {
    for (int x : b) {
      if (std::find(a.begin(), a.end(), x) == a.end()) a.push_back(x);
    }
    return a;
  }

  std::vector<int> FlowBlock(const Block& block, std::vector<int> in, int& prev_lead) {
    for (const Stmt& stmt : block.stmts) in = FlowStmt(stmt, std::move(in), prev_lead);
    return in;
  }

  // Body of a nested construct: its own sequence, controlled by `control`.
  std::vector<int> FlowNested(const Block& block, std::vector<int> in, int control) {
    const int saved = control_;
    control_ = control;
    int lead = -1;
    std::vector<int> out = FlowBlock(block, std::move(in), lead);
    control_ = saved;
    return out;
  }

  std::vector<int> FlowStmt(const Stmt& stmt, std::vector<int> in, int& prev_lead) {
    if (auto* block = std::get_if<Block>(&stmt.node)) return FlowBlock(*block, std::move(in), prev_lead);

    if (auto* branch = std::get_if<If>(&stmt.node)) {
      const int h = AddNode(StmtKind::kIf, branch->header, "if (" + PrintExpr(branch->cond) + ")",
                            VarAccess{{}, {}, Reads(branch->cond)}, in);
      Sequence(prev_lead, h);
      std::vector<int> out = FlowNested(branch->then_block, {h}, h);
      if (branch->else_block) {
        out = Union(out, FlowNested(*branch->else_block, {h}, h));
      } else {
        out = Union(out, {h});
      }
      return out;
    }

    if (auto* loop = std::get_if<While>(&stmt.node)) {
      const int h = AddNode(StmtKind::kWhile, loop->header, "while (" + PrintExpr(loop->cond) + ")",
                            VarAccess{{}, {}, Reads(loop->cond)}, in);
      Sequence(prev_lead, h);
      breaks_.emplace_back();
      const std::vector<int> body_out = FlowNested(loop->body, {h}, h);
      Link(body_out, h);
      std::vector<int> out = Union({h}, breaks_.back());
      breaks_.pop_back();
      return out;
    }

    if (auto* loop = std::get_if<For>(&stmt.node)) {
      std::vector<int> preds = std::move(in);
      int lead = -1;
      if (loop->init) {
        const Stmt& init = **loop->init;
        const int i = AddNode(StmtKind::kForInit, init.span, PrintSimpleStmt(init),
                              SimpleAccess(init), preds);
        lead = i;
        Sequence(prev_lead, i);
        preds = {i};
      }
      const std::string cond_text = loop->cond ? PrintExpr(*loop->cond) : "";
      const int h = AddNode(StmtKind::kForCond, loop->header, "for (" + cond_text + ")",
                            VarAccess{{}, {}, loop->cond ? Reads(*loop->cond) : std::set<std::string>{}},
                            preds);
      if (lead >= 0) {
        cfg_.sequence_pairs.emplace_back(lead, h);
      } else {
        Sequence(prev_lead, h);
      }
      breaks_.emplace_back();
      const int saved = control_;
      control_ = h;
      std::vector<int> body_in = {h};
      int update = -1;
      if (loop->update) {
        // Allocated before the body so node order follows the source text.
        const Stmt& upd = **loop->update;
        update = AddNode(StmtKind::kForUpdate, upd.span, PrintSimpleStmt(upd), SimpleAccess(upd), {});
      }
      int body_lead = -1;
      const std::vector<int> body_out = FlowBlock(loop->body, body_in, body_lead);
      control_ = saved;
      if (update >= 0) {
        Link(body_out, update);
        Link({update}, h);
      } else {
        Link(body_out, h);
      }
      std::vector<int> out = breaks_.back();
      breaks_.pop_back();
      if (loop->cond) out = Union({h}, out);
      return out;
    }

    if (auto* sw = std::get_if<Switch>(&stmt.node)) {
      const int h = AddNode(StmtKind::kSwitch, sw->header, "switch (" + PrintExpr(sw->scrutinee) + ")",
                            VarAccess{{}, {}, Reads(sw->scrutinee)}, in);
      Sequence(prev_lead, h);
      breaks_.emplace_back();
      std::vector<int> fall;
      for (const SwitchCase& c : sw->cases) fall = FlowNested(c.body, Union({h}, fall), h);
      if (sw->default_block) {
        fall = FlowNested(*sw->default_block, Union({h}, fall), h);
      } else {
        fall = Union(fall, {h});
      }
      std::vector<int> out = Union(fall, breaks_.back());
      breaks_.pop_back();
      return out;
    }

    const int n = AddNode(SimpleKind(stmt), stmt.span, PrintSimpleStmt(stmt), SimpleAccess(stmt), in);
    Sequence(prev_lead, n);
    if (stmt.Is<Break>()) {
      if (!breaks_.empty()) breaks_.back().push_back(n);
      return {};
    }
    if (stmt.Is<Return>()) return {};
    return {n};
  }

  Cfg cfg_;
  std::vector<std::vector<int>> breaks_;
  int control_ = -1;
};

}  // namespace

Cfg BuildCfg(const Function& fn) { return CfgBuilder().Build(fn); }

std::vector<std::pair<int, int>> ReachingDefinitions(const Cfg& cfg) {
  struct Definition {
    int node;
    std::string var;
  };
  std::vector<Definition> defs;
  for (int n = 0; n < static_cast<int>(cfg.nodes.size()); ++n) {
    for (const auto& v : cfg.access[n].strong_defs) defs.push_back({n, v});
    for (const auto& v : cfg.access[n].weak_defs) defs.push_back({n, v});
  }
  const std::size_t num_nodes = cfg.nodes.size();
  const std::size_t num_defs = defs.size();
  using Bits = std::vector<bool>;
  std::vector<Bits> gen(num_nodes, Bits(num_defs)), kill(num_nodes, Bits(num_defs));
  for (std::size_t d = 0; d < num_defs; ++d) {
    gen[defs[d].node][d] = true;
    for (std::size_t n = 0; n < num_nodes; ++n) {
      if (static_cast<int>(n) != defs[d].node && cfg.access[n].strong_defs.count(defs[d].var)) {
        kill[n][d] = true;
      }
    }
  }
  std::vector<std::vector<int>> preds(num_nodes);
  for (std::size_t n = 0; n < num_nodes; ++n) {
    for (int s : cfg.successors[n]) preds[s].push_back(static_cast<int>(n));
  }
  // Definitions in unreachable code (e.g. a for-update after a body that
  // always breaks) reach nothing.
  std::vector<bool> reachable(num_nodes, false);
  std::vector<int> stack = {cfg.entry};
  reachable[cfg.entry] = true;
  while (!stack.empty()) {
    const int n = stack.back();
    stack.pop_back();
    for (int s : cfg.successors[n]) {
      if (!reachable[s]) {
        reachable[s] = true;
        stack.push_back(s);
      }
    }
  }
  std::vector<Bits> in(num_nodes, Bits(num_defs)), out(num_nodes, Bits(num_defs));
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t n = 0; n < num_nodes; ++n) {
      if (!reachable[n]) continue;
      Bits next_in(num_defs);
      for (int p : preds[n]) {
        for (std::size_t d = 0; d < num_defs; ++d) next_in[d] = next_in[d] || out[p][d];
      }
      Bits next_out(num_defs);
      for (std::size_t d = 0; d < num_defs; ++d) {
        next_out[d] = gen[n][d] || (next_in[d] && !kill[n][d]);
      }
      if (next_in != in[n] || next_out != out[n]) {
        in[n] = std::move(next_in);
        out[n] = std::move(next_out);
        changed = true;
      }
    }
  }
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t u = 0; u < num_nodes; ++u) {
    for (std::size_t d = 0; d < num_defs; ++d) {
      if (in[u][d] && cfg.access[u].uses.count(defs[d].var)) {
        pairs.emplace_back(defs[d].node, static_cast<int>(u));
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

std::vector<std::pair<int, int>> ControlDependence(const Cfg& cfg) {
  std::vector<std::pair<int, int>> pairs;
  for (int n = 0; n < static_cast<int>(cfg.nodes.size()); ++n) {
    if (cfg.control_parent[n] >= 0) pairs.emplace_back(cfg.control_parent[n], n);
  }
  return pairs;
}

std::vector<std::pair<int, int>> ControlDependence(const Function& fn) {
  return ControlDependence(BuildCfg(fn));
}

}  // namespace vulnlens::codegraph
