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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "vulnlens/common/error.h"
#include "vulnlens/common/rng.h"
#include "vulnlens/tensor/checkpoint.h"

namespace vulnlens::tensor {
namespace {

TEST(CheckpointTest, RoundTripIsBitExact) {
  Rng rng(5);
  Checkpoint original;
  original.metadata = {{"arch", "gcn"}, {"hidden_dim", "16"}};
  original.params["enc.w"] = Tensor::Randn(7, 3, rng);
  original.params["enc.b"] = Tensor::FromRows({{1e-300, -0.0, 1.0 / 3.0}});
  const Checkpoint loaded = ParseCheckpoint(SerializeCheckpoint(original));
  EXPECT_EQ(original.metadata, loaded.metadata);
  ASSERT_EQ(original.params.size(), loaded.params.size());
  for (const auto& [name, t] : original.params) {
    const Tensor& u = loaded.params.at(name);
    ASSERT_TRUE(t.SameShape(u));
    for (std::size_t i = 0; i < t.size(); ++i) {
      EXPECT_EQ(std::bit_cast<std::uint64_t>(t[i]), std::bit_cast<std::uint64_t>(u[i]));
    }
  }
}

TEST(CheckpointTest, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "vulnlens_checkpoint_test.json";
  Checkpoint original;
  original.params["w"] = Tensor::FromRows({{1.5, 2.5}});
  SaveCheckpoint(path.string(), original);
  EXPECT_EQ(original.params.at("w").data(), LoadCheckpoint(path.string()).params.at("w").data());
  std::filesystem::remove(path);
}

TEST(CheckpointTest, RejectsMalformedInput) {
  EXPECT_THROW(ParseCheckpoint("not json"), FormatError);
  EXPECT_THROW(ParseCheckpoint("{\"format\":\"other\"}"), FormatError);
  EXPECT_THROW(
      ParseCheckpoint(R"({"format":"vulnlens-checkpoint-1","metadata":{},)"
                      R"("params":{"w":{"rows":2,"cols":2,"data":["3ff0000000000000"]}}})"),
      FormatError);
}

}  // namespace
}  // namespace vulnlens::tensor
