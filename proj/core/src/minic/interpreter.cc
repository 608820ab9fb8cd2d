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

#include "vulnlens/minic/interpreter.h"

#include <limits>
#include <map>
#include <string>

namespace vulnlens::minic {

std::string_view ExecStatusName(ExecStatus status) {
  switch (status) {
    case ExecStatus::kNormal: return "normal";
    case ExecStatus::kTrapOutOfBounds: return "trap(out-of-bounds)";
    case ExecStatus::kTrapDivByZero: return "trap(div-by-zero)";
    case ExecStatus::kStepLimitExceeded: return "step-limit-exceeded";
  }
  return "?";
}

namespace {

constexpr int kMaxCallDepth = 200;

struct Halt {
  ExecStatus status;
};

enum class Flow { kNext, kBreak, kReturn };

struct Value {
  std::int64_t scalar = 0;
  std::vector<std::int64_t> array;
  bool is_array = false;
};

std::int64_t Wrap(std::uint64_t v) { return static_cast<std::int64_t>(v); }

class Machine {
 public:
  Machine(const Function& fn, std::span<const std::int64_t> inputs, std::int64_t step_limit)
      : fn_(fn), inputs_(inputs), step_limit_(step_limit) {}

  ExecTrace Run() {
    ExecTrace trace;
    try {
      std::vector<std::int64_t> args;
      for (const Param& p : fn_.params) {
        args.push_back(p.array_size ? 0 : NextInput());
      }
      trace.return_value = Invoke(args);
      trace.status = ExecStatus::kNormal;
    } catch (const Halt& halt) {
      trace.status = halt.status;
    }
    trace.outputs = std::move(outputs_);
    trace.steps = steps_;
    return trace;
  }

 private:
  using Scope = std::map<std::string, Value, std::less<>>;

  std::int64_t NextInput() { return next_input_ < inputs_.size() ? inputs_[next_input_++] : 0; }

  void Tick() {
    if (++steps_ > step_limit_) throw Halt{ExecStatus::kStepLimitExceeded};
  }

  std::int64_t Invoke(const std::vector<std::int64_t>& args) {
    if (depth_ >= kMaxCallDepth) throw Halt{ExecStatus::kStepLimitExceeded};
    ++depth_;
    std::vector<Scope> saved = std::move(scopes_);
    scopes_.clear();
    scopes_.emplace_back();
    for (std::size_t i = 0; i < fn_.params.size(); ++i) {
      const Param& p = fn_.params[i];
      Value v;
      if (p.array_size) {
        v.is_array = true;
        v.array.assign(static_cast<std::size_t>(*p.array_size), 0);
      } else {
        v.scalar = args[i];
      }
      scopes_.back()[p.name] = std::move(v);
    }
    const Flow flow = ExecBlock(fn_.body);
    const std::int64_t result = flow == Flow::kReturn ? return_value_ : 0;
    scopes_ = std::move(saved);
    --depth_;
    return result;
  }

  Value& Lookup(const std::string& name) {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto found = it->find(name);
      if (found != it->end()) return found->second;
    }
    // The parser guarantees resolution; reaching here means a malformed tree.
    throw Halt{ExecStatus::kTrapOutOfBounds};
  }

  std::int64_t& Element(const std::string& array, std::int64_t index) {
    Value& v = Lookup(array);
    if (index < 0 || index >= static_cast<std::int64_t>(v.array.size())) {
      throw Halt{ExecStatus::kTrapOutOfBounds};
    }
    return v.array[static_cast<std::size_t>(index)];
  }

  std::int64_t Eval(const Expr& expr) {
    if (auto* lit = std::get_if<IntLit>(&expr.node)) return lit->value;
    if (auto* id = std::get_if<Ident>(&expr.node)) return Lookup(id->name).scalar;
    if (auto* idx = std::get_if<Index>(&expr.node)) {
      const std::int64_t i = Eval(*idx->index);
      return Element(idx->array, i);
    }
    if (auto* call = std::get_if<Call>(&expr.node)) return EvalCall(*call);
    if (auto* un = std::get_if<Unary>(&expr.node)) {
      const std::int64_t v = Eval(*un->operand);
      if (un->op == UnaryOp::kNot) return v == 0 ? 1 : 0;
      return Wrap(0ULL - static_cast<std::uint64_t>(v));
    }
    const auto& bin = expr.As<Binary>();
    if (bin.op == BinaryOp::kAnd) {
      if (Eval(*bin.lhs) == 0) return 0;
      return Eval(*bin.rhs) != 0 ? 1 : 0;
    }
    if (bin.op == BinaryOp::kOr) {
      if (Eval(*bin.lhs) != 0) return 1;
      return Eval(*bin.rhs) != 0 ? 1 : 0;
    }
    const std::int64_t a = Eval(*bin.lhs);
    const std::int64_t b = Eval(*bin.rhs);
    const auto ua = static_cast<std::uint64_t>(a);
    const auto ub = static_cast<std::uint64_t>(b);
    switch (bin.op) {
      case BinaryOp::kAdd: return Wrap(ua + ub);
      case BinaryOp::kSub: return Wrap(ua - ub);
      case BinaryOp::kMul: return Wrap(ua * ub);
      case BinaryOp::kDiv:
      case BinaryOp::kMod: {
        if (b == 0) throw Halt{ExecStatus::kTrapDivByZero};
        if (a == std::numeric_limits<std::int64_t>::min() && b == -1) {
          return bin.op == BinaryOp::kDiv ? a : 0;
        }
        return bin.op == BinaryOp::kDiv ? a / b : a % b;
      }
      case BinaryOp::kLt: return a < b;
      case BinaryOp::kLe: return a <= b;
      case BinaryOp::kGt: return a > b;
      case BinaryOp::kGe: return a >= b;
      case BinaryOp::kEq: return a == b;
      case BinaryOp::kNe: return a != b;
      default: return 0;
    }
  }

  std::int64_t EvalCall(const Call& call) {
    if (call.callee == kReadInt) return NextInput();
    std::vector<std::int64_t> args;
    args.reserve(call.args.size());
    for (const Expr& a : call.args) args.push_back(Eval(a));
    if (call.callee == kPrintInt) {
      outputs_.push_back(args.at(0));
      return 0;
    }
    if (call.callee == fn_.name) return Invoke(args);
    return 0;
  }

  void Store(const Expr& target, std::int64_t value) {
    if (auto* id = std::get_if<Ident>(&target.node)) {
      Lookup(id->name).scalar = value;
      return;
    }
    const auto& idx = target.As<Index>();
    const std::int64_t i = Eval(*idx.index);
    Element(idx.array, i) = value;
  }

  void Declare(const Decl& decl) {
    Value v;
    if (decl.array_size) {
      v.is_array = true;
      v.array.assign(static_cast<std::size_t>(*decl.array_size), 0);
    } else if (decl.init) {
      v.scalar = Eval(*decl.init);
    }
    scopes_.back()[decl.name] = std::move(v);
  }

  Flow ExecBlock(const Block& block) {
    scopes_.emplace_back();
    Flow flow = Flow::kNext;
    for (const Stmt& stmt : block.stmts) {
      flow = Exec(stmt);
      if (flow != Flow::kNext) break;
    }
    scopes_.pop_back();
    return flow;
  }

  bool Test(const Expr& cond) {
    Tick();
    return Eval(cond) != 0;
  }

  Flow Exec(const Stmt& stmt) {
    Tick();
    if (auto* d = std::get_if<Decl>(&stmt.node)) {
      Declare(*d);
      return Flow::kNext;
    }
    if (auto* a = std::get_if<Assign>(&stmt.node)) {
      // Right-hand side first, then the target's index.
      const std::int64_t v = Eval(a->value);
      Store(a->target, v);
      return Flow::kNext;
    }
    if (auto* e = std::get_if<ExprStmt>(&stmt.node)) {
      Eval(e->expr);
      return Flow::kNext;
    }
    if (auto* s = std::get_if<If>(&stmt.node)) {
      if (Eval(s->cond) != 0) return ExecBlock(s->then_block);
      if (s->else_block) return ExecBlock(*s->else_block);
      return Flow::kNext;
    }
    if (auto* s = std::get_if<While>(&stmt.node)) {
      while (Test(s->cond)) {
        const Flow flow = ExecBlock(s->body);
        if (flow == Flow::kBreak) break;
        if (flow == Flow::kReturn) return flow;
      }
      return Flow::kNext;
    }
    if (auto* s = std::get_if<For>(&stmt.node)) {
      scopes_.emplace_back();
      Flow result = Flow::kNext;
      if (s->init) Exec(**s->init);
      while (!s->cond || Test(*s->cond)) {
        if (!s->cond) Tick();
        const Flow flow = ExecBlock(s->body);
        if (flow == Flow::kBreak) break;
        if (flow == Flow::kReturn) {
          result = flow;
          break;
        }
        if (s->update) Exec(**s->update);
      }
      scopes_.pop_back();
      return result;
    }
    if (auto* s = std::get_if<Switch>(&stmt.node)) {
      const std::int64_t v = Eval(s->scrutinee);
      std::size_t start = s->cases.size();
      for (std::size_t i = 0; i < s->cases.size(); ++i) {
        if (s->cases[i].label == v) {
          start = i;
          break;
        }
      }
      // Fall through from the matching case into later cases and default.
      for (std::size_t i = start; i < s->cases.size(); ++i) {
        const Flow flow = ExecBlock(s->cases[i].body);
        if (flow == Flow::kBreak) return Flow::kNext;
        if (flow == Flow::kReturn) return flow;
      }
      if (s->default_block) {
        const Flow flow = ExecBlock(*s->default_block);
        if (flow == Flow::kReturn) return flow;
      }
      return Flow::kNext;
    }
    if (stmt.Is<Break>()) return Flow::kBreak;
    if (auto* r = std::get_if<Return>(&stmt.node)) {
      return_value_ = r->value ? Eval(*r->value) : 0;
      return Flow::kReturn;
    }
    return ExecBlock(stmt.As<Block>());
  }

  const Function& fn_;
  std::span<const std::int64_t> inputs_;
  std::size_t next_input_ = 0;
  std::int64_t step_limit_;
  std::int64_t steps_ = 0;
  int depth_ = 0;
  std::vector<Scope> scopes_;
  std::vector<std::int64_t> outputs_;
  std::int64_t return_value_ = 0;
};

}  // namespace

ExecTrace Interpret(const Function& fn, std::span<const std::int64_t> inputs,
                    std::int64_t step_limit) {
  return Machine(fn, inputs, step_limit).Run();
}

}  // namespace vulnlens::minic
