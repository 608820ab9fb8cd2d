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

#include <stdexcept>
#include <string>
#include <string_view>

namespace vulnlens {

// Base of every error raised by the library. `kind()` is a stable identifier
// used in machine-readable error records.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define VULNLENS_DEFINE_ERROR(Name)                         \
  class Name : public Error {                               \
   public:                                                  \
    explicit Name(const std::string& message)               \
        : Error(#Name, message) {}                          \
  }

// Front end.
VULNLENS_DEFINE_ERROR(LexError);
VULNLENS_DEFINE_ERROR(ParseError);
VULNLENS_DEFINE_ERROR(ScopeError);

// Transformations.
VULNLENS_DEFINE_ERROR(CollisionError);
VULNLENS_DEFINE_ERROR(PurityError);
VULNLENS_DEFINE_ERROR(DependencyError);
VULNLENS_DEFINE_ERROR(NoElseError);
VULNLENS_DEFINE_ERROR(FallthroughError);
VULNLENS_DEFINE_ERROR(SiteError);

// Numerics.
VULNLENS_DEFINE_ERROR(ShapeError);
VULNLENS_DEFINE_ERROR(NonFiniteError);

// Training and evaluation.
VULNLENS_DEFINE_ERROR(DataError);
VULNLENS_DEFINE_ERROR(EmptyPositivesError);
VULNLENS_DEFINE_ERROR(SizeError);
VULNLENS_DEFINE_ERROR(LengthMismatchError);
VULNLENS_DEFINE_ERROR(MissingGroundTruthError);

// Configuration and I/O.
VULNLENS_DEFINE_ERROR(ConfigError);
VULNLENS_DEFINE_ERROR(FormatError);

#undef VULNLENS_DEFINE_ERROR

}  // namespace vulnlens
