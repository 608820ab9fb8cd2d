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

namespace vulnlens::minic {

// 1-based, inclusive start and exclusive-free end position of a construct.
struct SourceSpan {
  int start_line = 0;
  int start_col = 0;
  int end_line = 0;
  int end_col = 0;

  bool valid() const { return start_line > 0; }
  std::string ToString() const;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

// Smallest span covering both arguments.
SourceSpan Cover(const SourceSpan& a, const SourceSpan& b);

}  // namespace vulnlens::minic
