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

#include <string>

#include "vulnlens/minic/ast.h"

namespace vulnlens::transforms::internal {

bool IsSwappableOperandPair(const minic::Binary& bin);
// Empty when the two adjacent statements may be exchanged, otherwise the
// reason they may not.
std::string StatementDependency(const minic::Stmt& first, const minic::Stmt& second);
// Empty when the switch lowers to an if chain, otherwise the reason it does not.
std::string SwitchFallthrough(const minic::Switch& sw);

}  // namespace vulnlens::transforms::internal
