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
#include <span>
#include <string>
#include <vector>

#include "vulnlens/minic/ast.h"

namespace vulnlens::minic {

enum class ExecStatus {
  kNormal,
  kTrapOutOfBounds,
  kTrapDivByZero,
  kStepLimitExceeded,
};

std::string_view ExecStatusName(ExecStatus status);

struct ExecTrace {
  std::vector<std::int64_t> outputs;
  ExecStatus status = ExecStatus::kNormal;
  std::int64_t return_value = 0;
  std::int64_t steps = 0;

  bool traps() const {
    return status == ExecStatus::kTrapOutOfBounds || status == ExecStatus::kTrapDivByZero;
  }
  // Observable behaviour: status and printed outputs.
  bool SameBehaviour(const ExecTrace& other) const {
    return status == other.status && outputs == other.outputs;
  }
};

inline constexpr std::int64_t kDefaultStepLimit = 100000;

// Reference semantics for MiniC.
//  - Scalar parameters of the entry call consume inputs first; array
//    parameters start zero-filled.
//  - read_int() consumes the next input, 0 once inputs are exhausted.
//  - print_int(x) appends x to the output list.
//  - Calls to unknown functions evaluate their arguments and yield 0.
//  - Arithmetic wraps at 64 bits; division truncates toward zero.
//  - Every executed statement and every loop-condition test costs one step.
ExecTrace Interpret(const Function& fn, std::span<const std::int64_t> inputs,
                    std::int64_t step_limit = kDefaultStepLimit);

}  // namespace vulnlens::minic
