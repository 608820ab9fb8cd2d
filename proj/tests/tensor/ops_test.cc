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

#include "support/gradcheck.h"
#include "support/oracles.h"
#include "vulnlens/common/error.h"
#include "vulnlens/common/rng.h"
#include "vulnlens/tensor/ops.h"

namespace vulnlens::tensor {
namespace {

using testing::GradientError;
using testing::Project;

constexpr double kTolerance = 1e-4;
constexpr int kInstances = 20;

TEST(TensorTest, RejectsNonFiniteData) {
  EXPECT_THROW(Tensor(1, 2, std::vector<double>{1.0, NAN}), NonFiniteError);
  EXPECT_THROW(Tensor(1, 1, std::vector<double>{INFINITY}), NonFiniteError);
  EXPECT_THROW(Tensor(2, 2, std::vector<double>{1.0}), ShapeError);
}

TEST(OpsTest, ReluAtNegativeOneHasZeroGradient) {
  Tape tape;
  Var x = tape.Leaf(Tensor::Scalar(-1.0));
  Var y = Relu(x);
  EXPECT_EQ(0.0, y.value().item());
  tape.Backward(y);
  EXPECT_EQ(0.0, x.grad().item());
}

TEST(OpsTest, ReluAndL1SubgradientAtZero) {
  Tape tape;
  Var x = tape.Leaf(Tensor::Scalar(0.0));
  Var y = Add(Relu(x), L1Norm(x));
  tape.Backward(y);
  EXPECT_EQ(0.0, x.grad().item());
}

TEST(OpsTest, SigmoidDerivativeAtZero) {
  Tape tape;
  Var x = tape.Leaf(Tensor::Scalar(0.0));
  Var y = Sigmoid(x);
  EXPECT_DOUBLE_EQ(0.5, y.value().item());
  tape.Backward(y);
  EXPECT_DOUBLE_EQ(0.25, x.grad().item());
}

TEST(OpsTest, MatMulShapeMismatch) {
  Tape tape;
  EXPECT_THROW(MatMul(tape.Constant(Tensor(2, 3)), tape.Constant(Tensor(2, 3))), ShapeError);
}

TEST(OpsTest, LogOfZeroIsNonFinite) {
  Tape tape;
  EXPECT_THROW(Log(tape.Constant(Tensor(1, 2))), NonFiniteError);
}

TEST(OpsTest, ExpOverflowIsNonFinite) {
  Tape tape;
  EXPECT_THROW(Exp(tape.Constant(Tensor::Scalar(1000.0))), NonFiniteError);
}

TEST(OpsTest, DisconnectedParameterHasExactlyZeroGradient) {
  Tape tape;
  Rng rng(3);
  Var used = tape.Leaf(Tensor::Randn(3, 3, rng));
  Var unused = tape.Leaf(Tensor::Randn(3, 3, rng));
  tape.Backward(Sum(Tanh(used)));
  for (double g : unused.grad().data()) EXPECT_EQ(0.0, g);
}

TEST(OpsTest, MaskedLogSoftmaxIgnoresMaskedEntries) {
  Tape tape;
  Var x = tape.Leaf(Tensor::FromRows({{1.0, 2.0, 300.0}}));
  Var y = MaskedLogSoftmax(x, Tensor::FromRows({{1.0, 1.0, 0.0}}));
  EXPECT_NEAR(1.0 - std::log(std::exp(1.0) + std::exp(2.0)), y.value()(0, 0), 1e-12);
  EXPECT_EQ(0.0, y.value()(0, 2));
  tape.Backward(Sum(y));
  EXPECT_EQ(0.0, x.grad()(0, 2));
}

TEST(OpsTest, ScatterEdgesAddsDuplicatesAndMirrors) {
  Tape tape;
  Var e = tape.Leaf(Tensor::FromRows({{0.5}, {0.25}, {2.0}}));
  Var a = ScatterEdges(e, {0, 0, 1}, {1, 1, 2}, 3, /*symmetric=*/true);
  EXPECT_DOUBLE_EQ(0.75, a.value()(0, 1));
  EXPECT_DOUBLE_EQ(0.75, a.value()(1, 0));
  EXPECT_DOUBLE_EQ(2.0, a.value()(2, 1));
  EXPECT_DOUBLE_EQ(0.0, a.value()(0, 0));
}

class PrimitiveGradientTest : public ::testing::TestWithParam<testing::GradCase> {};

TEST_P(PrimitiveGradientTest, MatchesCentralDifferences) {
  const testing::GradCase& c = GetParam();
  for (int instance = 0; instance < kInstances; ++instance) {
    EXPECT_LE(testing::PrimitiveGradientError(c, instance), kTolerance)
        << c.name << " instance " << instance;
  }
}

INSTANTIATE_TEST_SUITE_P(
    Primitives, PrimitiveGradientTest, ::testing::ValuesIn(testing::PrimitiveGradCases()),
    [](const ::testing::TestParamInfo<testing::GradCase>& info) {
      return std::string(info.param.name);
    });

}  // namespace
}  // namespace vulnlens::tensor
