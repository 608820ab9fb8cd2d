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

#include "vulnlens/tensor/checkpoint.h"

#include <bit>
#include <cstdint>
#include <cstdio>

#include "json.hpp"
#include "vulnlens/common/error.h"
#include "vulnlens/common/io.h"

namespace vulnlens::tensor {
namespace {

using nlohmann::json;

constexpr std::string_view kFormat = "vulnlens-checkpoint-1";

std::string EncodeBits(double x) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(std::bit_cast<std::uint64_t>(x)));
  return buf;
}

double DecodeBits(const std::string& hex) {
  if (hex.size() != 16) throw FormatError("bad encoded double '" + hex + "'");
  std::uint64_t bits = 0;
  for (char c : hex) {
    bits <<= 4;
    if (c >= '0' && c <= '9') {
      bits |= static_cast<std::uint64_t>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      bits |= static_cast<std::uint64_t>(c - 'a' + 10);
    } else {
      throw FormatError("bad encoded double '" + hex + "'");
    }
  }
  return std::bit_cast<double>(bits);
}

}  // namespace

std::string SerializeCheckpoint(const Checkpoint& checkpoint) {
  json doc;
  doc["format"] = kFormat;
  doc["metadata"] = checkpoint.metadata;
  json params = json::object();
  for (const auto& [name, t] : checkpoint.params) {
    json data = json::array();
    for (double x : t.data()) data.push_back(EncodeBits(x));
    params[name] = {{"rows", t.rows()}, {"cols", t.cols()}, {"data", std::move(data)}};
  }
  doc["params"] = std::move(params);
  return doc.dump() + "\n";
}

Checkpoint ParseCheckpoint(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("checkpoint is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || doc.value("format", "") != kFormat) {
    throw FormatError("not a checkpoint record");
  }
  Checkpoint out;
  try {
    out.metadata = doc.at("metadata").get<std::map<std::string, std::string>>();
    for (const auto& [name, entry] : doc.at("params").items()) {
      const int rows = entry.at("rows").get<int>();
      const int cols = entry.at("cols").get<int>();
      std::vector<double> data;
      for (const auto& x : entry.at("data")) data.push_back(DecodeBits(x.get<std::string>()));
      out.params.emplace(name, Tensor(rows, cols, std::move(data)));
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed checkpoint: ") + e.what());
  } catch (const ShapeError& e) {
    throw FormatError(std::string("malformed checkpoint: ") + e.what());
  }
  return out;
}

void SaveCheckpoint(const std::string& path, const Checkpoint& checkpoint) {
  WriteFileAtomic(path, SerializeCheckpoint(checkpoint));
}

Checkpoint LoadCheckpoint(const std::string& path) { return ParseCheckpoint(ReadFile(path)); }

}  // namespace vulnlens::tensor
