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

#include "vulnlens/eval/corpus.h"

#include <algorithm>
#include <cmath>
#include <optional>

#include "vulnlens/common/error.h"
#include "vulnlens/common/rng.h"
#include "vulnlens/minic/interpreter.h"

namespace vulnlens::eval {

void CorpusSpec::Validate() const {
  if (n_samples < 10) throw ConfigError("corpus needs at least 10 samples");
  if (!(vulnerable_ratio > 0.0 && vulnerable_ratio < 1.0)) {
    throw ConfigError("vulnerable_ratio must lie in (0, 1)");
  }
  if (min_distractors < 0 || max_distractors < min_distractors) {
    throw ConfigError("invalid distractor range");
  }
}

std::string_view GuardKindName(GuardKind kind) {
  switch (kind) {
    case GuardKind::kFull: return "full-guard";
    case GuardKind::kEarlyReturn: return "early-return";
    case GuardKind::kLoopIndex: return "loop-index";
    case GuardKind::kConstantIndex: return "constant-index";
    case GuardKind::kMissingLower: return "missing-lower-bound";
    case GuardKind::kMissingUpper: return "missing-upper-bound";
    case GuardKind::kUnrelated: return "unrelated-guard";
  }
  return "?";
}

bool IsVulnerable(GuardKind kind) {
  return kind == GuardKind::kMissingLower || kind == GuardKind::kMissingUpper ||
         kind == GuardKind::kUnrelated;
}

namespace {

const std::vector<std::string> kFunctionNames = {"process", "handle", "update", "store",
                                                 "fill",    "record", "apply",  "emit"};
const std::vector<std::string> kArrayNames = {"buf", "data", "table", "slots", "vals", "cells"};
const std::vector<std::string> kIndexNames = {"idx", "pos", "off", "slot", "at", "where"};
const std::vector<std::string> kAccNames = {"acc", "sum", "total", "state", "res", "tmp"};

// Everything a sample and its twin share.
struct Skeleton {
  std::string function;
  std::string array;
  std::string index;
  std::string acc;
  int size = 16;
  int init = 0;
  int unrelated_bound = 0;
  int guard_form = 0;
  std::vector<std::vector<std::string>> pre, mid, post;
};

class Builder {
 public:
  void Line(int depth, const std::string& text) {
    lines_.push_back(std::string(2 * depth, ' ') + text);
  }
  void Lines(int depth, const std::vector<std::string>& stmt) {
    // Multi-line distractors open a block on the first line and close it on
    // the last.
    for (std::size_t k = 0; k < stmt.size(); ++k) {
      const bool inner = stmt.size() > 1 && k > 0 && k + 1 < stmt.size();
      Line(depth + (inner ? 1 : 0), stmt[k]);
    }
  }
  int next_line() const { return static_cast<int>(lines_.size()) + 1; }
  std::string Text() const {
    std::string out;
    for (const auto& l : lines_) out += l + "\n";
    return out;
  }

 private:
  std::vector<std::string> lines_;
};

std::vector<std::string> Distractor(Rng& rng, const Skeleton& s, int& fresh) {
  const std::string c = std::to_string(rng.UniformInt(1, 9));
  const std::string& acc = s.acc;
  switch (rng.UniformInt(0, 7)) {
    case 0: return {acc + " = " + acc + " + n * " + c + ";"};
    case 1: return {acc + " = " + acc + " - " + c + ";"};
    case 2: return {"print_int(" + acc + ");"};
    case 3: {
      const std::string t = "t" + std::to_string(fresh++);
      return {"int " + t + " = n + " + c + ";"};
    }
    case 4: return {"if (" + acc + " > " + c + ") {", acc + " = " + acc + " - n;", "}"};
    case 5: {
      const std::string k = "k" + std::to_string(fresh++);
      return {"for (int " + k + " = 0; " + k + " < " + c + "; " + k + " = " + k + " + 1) {",
              acc + " = " + acc + " + " + k + ";", "}"};
    }
    case 6:
      return {s.array + "[" + std::to_string(rng.UniformInt(0, s.size - 1)) + "] = " + acc + ";"};
    default: {
      const std::string w = "w" + std::to_string(fresh++);
      // Declared on its own line before the loop.
      return {"int " + w + " = " + c + ";", "while (" + w + " > 0) {", w + " = " + w + " - 1;",
              "}"};
    }
  }
}

Skeleton MakeSkeleton(Rng& rng, const CorpusSpec& spec) {
  Skeleton s;
  s.function = rng.Pick(kFunctionNames);
  s.array = rng.Pick(kArrayNames);
  s.index = rng.Pick(kIndexNames);
  s.acc = rng.Pick(kAccNames);
  s.size = static_cast<int>(rng.Pick(std::vector<std::int64_t>{8, 12, 16, 24, 32}));
  s.init = static_cast<int>(rng.UniformInt(0, 5));
  s.unrelated_bound = static_cast<int>(rng.UniformInt(-4, 4));
  s.guard_form = static_cast<int>(rng.UniformInt(0, 2));
  int fresh = 0;
  const int count = static_cast<int>(rng.UniformInt(spec.min_distractors, spec.max_distractors));
  for (int k = 0; k < count; ++k) {
    auto stmt = Distractor(rng, s, fresh);
    switch (rng.UniformInt(0, 2)) {
      case 0: s.pre.push_back(std::move(stmt)); break;
      case 1: s.mid.push_back(std::move(stmt)); break;
      default: s.post.push_back(std::move(stmt)); break;
    }
  }
  return s;
}

void EmitDistractors(Builder& b, const std::vector<std::vector<std::string>>& stmts) {
  for (const auto& stmt : stmts) {
    if (stmt.size() == 4) {
      // while loop with its counter declaration.
      b.Line(1, stmt[0]);
      b.Line(1, stmt[1]);
      b.Line(2, stmt[2]);
      b.Line(1, stmt[3]);
    } else {
      b.Lines(1, stmt);
    }
  }
}

std::string GuardCondition(const Skeleton& s, GuardKind kind) {
  const std::string& i = s.index;
  const std::string size = std::to_string(s.size);
  switch (kind) {
    case GuardKind::kFull:
      if (s.guard_form == 0) return i + " >= 0 && " + i + " < " + size;
      if (s.guard_form == 1) return i + " < " + size + " && " + i + " >= 0";
      return "0 <= " + i + " && " + i + " < " + size;
    case GuardKind::kMissingLower: return i + " < " + size;
    case GuardKind::kMissingUpper: return i + " >= 0";
    case GuardKind::kUnrelated: return "n > " + std::to_string(s.unrelated_bound);
    default: return "";
  }
}

CorpusSample Render(const Skeleton& s, GuardKind kind) {
  Builder b;
  b.Line(0, "int " + s.function + "(int n) {");
  b.Line(1, "int " + s.array + "[" + std::to_string(s.size) + "];");
  b.Line(1, "int " + s.acc + " = " + std::to_string(s.init) + ";");
  EmitDistractors(b, s.pre);
  CorpusSample out;
  out.guard = kind;
  out.label = IsVulnerable(kind) ? 1 : 0;
  const std::string value = s.acc + " + n";
  int def_line = 0, guard_line = 0, write_line = 0;
  switch (kind) {
    case GuardKind::kLoopIndex: {
      EmitDistractors(b, s.mid);
      b.Line(1, "for (int " + s.index + " = 0; " + s.index + " < " + std::to_string(s.size) + "; " +
                    s.index + " = " + s.index + " + 1) {");
      b.Line(2, s.array + "[" + s.index + "] = " + value + ";");
      b.Line(1, "}");
      break;
    }
    case GuardKind::kConstantIndex: {
      EmitDistractors(b, s.mid);
      b.Line(1, s.array + "[" + std::to_string(s.size / 2) + "] = " + value + ";");
      break;
    }
    case GuardKind::kEarlyReturn: {
      b.Line(1, "int " + s.index + " = read_int();");
      EmitDistractors(b, s.mid);
      b.Line(1, "if (" + s.index + " < 0 || " + s.index + " >= " + std::to_string(s.size) + ") {");
      b.Line(2, "return 0;");
      b.Line(1, "}");
      b.Line(1, s.array + "[" + s.index + "] = " + value + ";");
      break;
    }
    default: {
      def_line = b.next_line();
      b.Line(1, "int " + s.index + " = read_int();");
      EmitDistractors(b, s.mid);
      guard_line = b.next_line();
      b.Line(1, "if (" + GuardCondition(s, kind) + ") {");
      write_line = b.next_line();
      b.Line(2, s.array + "[" + s.index + "] = " + value + ";");
      b.Line(1, "}");
      break;
    }
  }
  EmitDistractors(b, s.post);
  b.Line(1, "return " + s.acc + ";");
  b.Line(0, "}");
  out.code = b.Text();
  if (out.label == 1) out.vuln_lines = {def_line, guard_line, write_line};
  return out;
}

}  // namespace

std::vector<CorpusSample> GenerateCorpus(const CorpusSpec& spec) {
  spec.Validate();
  Rng rng(DeriveSeed(spec.rng_seed, "corpus"));
  const int vulnerable = std::clamp(
      static_cast<int>(std::lround(spec.vulnerable_ratio * spec.n_samples)), 1,
      spec.n_samples - 1);
  const int twins = std::min(vulnerable, spec.n_samples - vulnerable);
  std::vector<CorpusSample> samples;
  samples.reserve(static_cast<std::size_t>(spec.n_samples));
  const std::vector<GuardKind> flaws = {GuardKind::kMissingLower, GuardKind::kMissingUpper,
                                        GuardKind::kUnrelated};
  const std::vector<GuardKind> benign = {GuardKind::kFull, GuardKind::kEarlyReturn,
                                         GuardKind::kLoopIndex, GuardKind::kConstantIndex};
  for (int k = 0; k < vulnerable; ++k) {
    const Skeleton s = MakeSkeleton(rng, spec);
    samples.push_back(Render(s, flaws[static_cast<std::size_t>(k) % flaws.size()]));
    if (k < twins) samples.push_back(Render(s, GuardKind::kFull));
  }
  while (static_cast<int>(samples.size()) < spec.n_samples) {
    const Skeleton s = MakeSkeleton(rng, spec);
    samples.push_back(Render(s, rng.Pick(benign)));
  }
  rng.Shuffle(samples);
  for (std::size_t k = 0; k < samples.size(); ++k) {
    std::string number = std::to_string(k);
    samples[k].id = "s" + std::string(number.size() < 5 ? 5 - number.size() : 0, '0') + number;
  }
  return samples;
}

bool ProbeForOutOfBounds(const minic::Function& fn, std::uint64_t seed, int probes) {
  Rng rng(seed);
  for (int p = 0; p < probes; ++p) {
    std::vector<std::int64_t> inputs(8);
    for (auto& v : inputs) v = rng.UniformInt(-64, 64);
    if (minic::Interpret(fn, inputs).status == minic::ExecStatus::kTrapOutOfBounds) return true;
  }
  return false;
}

}  // namespace vulnlens::eval
