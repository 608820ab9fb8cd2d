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

#include "vulnlens/common/error.h"
#include "vulnlens/tensor/adam.h"

namespace vulnlens::tensor {
namespace {

TEST(AdamTest, ZeroGradientLeavesParamsUnchanged) {
  ParamSet params{{"w", Tensor::FromRows({{1.0, -2.0}})}};
  const ParamSet before = params;
  AdamState state;
  AdamStep(params, {{"w", Tensor(1, 2)}}, state, AdamConfig{});
  EXPECT_EQ(before.at("w").data(), params.at("w").data());
}

TEST(AdamTest, FirstStepMovesByLearningRateAgainstGradientSign) {
  ParamSet params{{"w", Tensor::FromRows({{0.0, 0.0, 0.0}})}};
  AdamState state;
  AdamConfig config;
  config.learning_rate = 0.01;
  AdamStep(params, {{"w", Tensor::FromRows({{3.0, -0.5, 1e-3}})}}, state, config);
  EXPECT_NEAR(-0.01, params.at("w")(0, 0), 1e-8);
  EXPECT_NEAR(0.01, params.at("w")(0, 1), 1e-8);
  EXPECT_NEAR(-0.01, params.at("w")(0, 2), 1e-7);
}

TEST(AdamTest, MinimisesSquare) {
  ParamSet params{{"x", Tensor::Scalar(1.0)}};
  AdamState state;
  AdamConfig config;
  config.learning_rate = 0.1;
  for (int step = 0; step < 200; ++step) {
    AdamStep(params, {{"x", Tensor::Scalar(2.0 * params.at("x").item())}}, state, config);
  }
  EXPECT_LT(std::abs(params.at("x").item()), 1e-2);
}

// Independent scalar recurrence for the same problem.
TEST(AdamTest, MatchesScalarRecurrence) {
  ParamSet params{{"x", Tensor::Scalar(1.0)}};
  AdamState state;
  AdamConfig config;
  config.learning_rate = 0.1;
  double x = 1.0, m = 0.0, v = 0.0;
  for (int t = 1; t <= 200; ++t) {
    const double g = 2.0 * x;
    m = 0.9 * m + 0.1 * g;
    v = 0.999 * v + 0.001 * g * g;
    x -= 0.1 * (m / (1 - std::pow(0.9, t))) / (std::sqrt(v / (1 - std::pow(0.999, t))) + 1e-8);
    AdamStep(params, {{"x", Tensor::Scalar(2.0 * params.at("x").item())}}, state, config);
  }
  EXPECT_NEAR(x, params.at("x").item(), 1e-12);
}

TEST(AdamTest, ShapeMismatchThrows) {
  ParamSet params{{"w", Tensor(2, 2)}};
  AdamState state;
  EXPECT_THROW(AdamStep(params, {{"w", Tensor(1, 2)}}, state, AdamConfig{}), ShapeError);
  EXPECT_THROW(AdamStep(params, {{"b", Tensor(2, 2)}}, state, AdamConfig{}), ShapeError);
}

}  // namespace
}  // namespace vulnlens::tensor
