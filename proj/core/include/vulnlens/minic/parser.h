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

#include <span>
#include <string_view>

#include "vulnlens/minic/ast.h"
#include "vulnlens/minic/token.h"

namespace vulnlens::minic {

// Parses exactly one function definition and checks scoping rules:
// identifiers are declared before use, no declaration shadows a visible name,
// `break` only occurs inside a loop or switch, and arrays are used as arrays.
// Throws ParseError or ScopeError.
Function ParseFunction(std::span<const Token> tokens);

// Tokenize followed by ParseFunction.
Function ParseSource(std::string_view source);

}  // namespace vulnlens::minic
