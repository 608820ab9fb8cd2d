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
#include <string>
#include <string_view>
#include <vector>

#include "vulnlens/eval/metrics.h"
#include "vulnlens/minic/ast.h"

namespace vulnlens::eval {

struct CorpusSpec {
  int n_samples = 2000;
  double vulnerable_ratio = 0.3;
  int min_distractors = 2;
  int max_distractors = 6;
  std::uint64_t rng_seed = 42;

  // Throws ConfigError.
  void Validate() const;
};

// How the bounds check around the array write is formed.
enum class GuardKind {
  kFull,            // 0 <= i < SIZE checked before the write
  kEarlyReturn,     // out-of-range index returns before the write
  kLoopIndex,       // write indexed by a bounded loop counter
  kConstantIndex,   // write at a constant in-range index
  kMissingLower,    // only i < SIZE
  kMissingUpper,    // only i >= 0
  kUnrelated,       // condition does not involve the index
};

std::string_view GuardKindName(GuardKind kind);
bool IsVulnerable(GuardKind kind);

struct CorpusSample {
  std::string id;
  std::string code;
  int label = 0;
  GuardKind guard = GuardKind::kFull;
  // 1-based lines of the index definition, the guard site and the write;
  // empty for benign samples.
  LineSet vuln_lines;
};

// Deterministic for a fixed spec. Vulnerable samples read an index with
// read_int() and write through it under an insufficient guard; each has a
// benign twin with the full guard while benign samples remain.
std::vector<CorpusSample> GenerateCorpus(const CorpusSpec& spec);

// Runs `fn` on `probes` random input vectors and reports whether any run
// ended in an out-of-bounds trap.
bool ProbeForOutOfBounds(const minic::Function& fn, std::uint64_t seed, int probes = 64);

}  // namespace vulnlens::eval
