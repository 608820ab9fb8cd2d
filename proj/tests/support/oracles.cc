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

#include "support/oracles.h"

#include <cmath>

#include "support/gradcheck.h"
#include "vulnlens/tensor/ops.h"

namespace vulnlens::testing {

namespace {

using namespace tensor;

Var ProjectRandom(Var out, Rng& rng) {
  return Project(out, Tensor::Randn(out.rows(), out.cols(), rng));
}

// -log[exp(s_ip) / sum_{a != i} exp(s_ia)], summed directly.
double NaiveTerm(const Tensor& z, int i, int p, double tau) {
  double denominator = 0.0;
  for (int a = 0; a < z.rows(); ++a) {
    if (a != i) denominator += std::exp(DotRows(z, i, a) / tau);
  }
  return -std::log(std::exp(DotRows(z, i, p) / tau) / denominator);
}

}  // namespace

const std::vector<GradCase>& PrimitiveGradCases() {
  static const auto* cases = new std::vector<GradCase>{
    GradCase{"matmul_left", 5, 4,
             [](Tape& t, Var x, Rng& r) {
               return ProjectRandom(MatMul(x, t.Constant(Tensor::Randn(4, 3, r))), r);
             }},
    GradCase{"matmul_right", 5, 4,
             [](Tape& t, Var x, Rng& r) {
               return ProjectRandom(MatMul(t.Constant(Tensor::Randn(3, 5, r)), x), r);
             }},
    GradCase{"transpose", 3, 4,
             [](Tape&, Var x, Rng& r) { return ProjectRandom(Transpose(x), r); }},
    GradCase{"add", 3, 3,
             [](Tape& t, Var x, Rng& r) {
               return ProjectRandom(Add(x, t.Constant(Tensor::Randn(3, 3, r))), r);
             }},
    GradCase{"sub", 3, 3,
             [](Tape& t, Var x, Rng& r) {
               return ProjectRandom(Sub(t.Constant(Tensor::Randn(3, 3, r)), x), r);
             }},
    GradCase{"mul", 3, 3,
             [](Tape& t, Var x, Rng& r) {
               return ProjectRandom(Mul(x, Add(x, t.Constant(Tensor::Randn(3, 3, r)))), r);
             }},
    GradCase{"scale", 2, 3, [](Tape&, Var x, Rng& r) { return ProjectRandom(Scale(x, -2.5), r); }},
    GradCase{"add_scalar", 2, 3,
             [](Tape&, Var x, Rng& r) { return ProjectRandom(Mul(x, AddScalar(x, 0.7)), r); }},
    GradCase{"add_row", 4, 3,
             [](Tape& t, Var x, Rng& r) {
               return ProjectRandom(AddRow(t.Constant(Tensor::Randn(2, 3, r)), SliceRows(x, 1, 2)), r);
             }},
    GradCase{"sigmoid", 3, 4, [](Tape&, Var x, Rng& r) { return ProjectRandom(Sigmoid(x), r); }},
    GradCase{"relu", 3, 4, [](Tape&, Var x, Rng& r) { return ProjectRandom(Relu(x), r); }},
    GradCase{"tanh", 3, 4, [](Tape&, Var x, Rng& r) { return ProjectRandom(Tanh(x), r); }},
    GradCase{"exp", 3, 4, [](Tape&, Var x, Rng& r) { return ProjectRandom(Exp(x), r); }},
    GradCase{"log", 3, 4, [](Tape&, Var x, Rng& r) { return ProjectRandom(Log(x), r); }, 0.5},
    GradCase{"sum", 3, 4, [](Tape&, Var x, Rng&) { return Sum(Mul(x, x)); }},
    GradCase{"mean", 3, 4, [](Tape&, Var x, Rng&) { return Mean(Mul(x, x)); }},
    GradCase{"l1_norm", 3, 4, [](Tape&, Var x, Rng&) { return L1Norm(x); }},
    GradCase{"row_l2_normalize", 4, 5,
             [](Tape&, Var x, Rng& r) { return ProjectRandom(RowL2Normalize(x), r); }},
    GradCase{"row_stochastic", 3, 4,
             [](Tape&, Var x, Rng& r) { return ProjectRandom(RowStochastic(x), r); }, 0.2},
    GradCase{"masked_log_softmax", 4, 4,
             [](Tape&, Var x, Rng& r) {
               Tensor mask(4, 4, 1.0);
               for (int i = 0; i < 4; ++i) mask(i, i) = 0.0;
               return ProjectRandom(MaskedLogSoftmax(Scale(x, 3.0), mask), r);
             }},
    GradCase{"mean_pool_rows", 5, 3,
             [](Tape&, Var x, Rng& r) { return ProjectRandom(MeanPoolRows(x), r); }},
    GradCase{"max_pool_rows", 5, 3,
             [](Tape&, Var x, Rng& r) { return ProjectRandom(MaxPoolRows(x), r); }},
    GradCase{"concat_cols", 3, 2,
             [](Tape& t, Var x, Rng& r) {
               return ProjectRandom(ConcatCols({x, t.Constant(Tensor::Randn(3, 2, r)), Tanh(x)}), r);
             }},
    GradCase{"concat_rows", 2, 3,
             [](Tape& t, Var x, Rng& r) {
               return ProjectRandom(ConcatRows({t.Constant(Tensor::Randn(1, 3, r)), x, Exp(x)}), r);
             }},
    GradCase{"pick", 3, 3, [](Tape&, Var x, Rng&) { return Mul(Pick(x, 1, 2), Pick(x, 2, 0)); }},
    GradCase{"scatter_edges", 4, 1,
             [](Tape&, Var x, Rng& r) {
               return ProjectRandom(ScatterEdges(x, {0, 1, 2, 0}, {1, 2, 0, 1}, 3, true), r);
             }}
  };
  return *cases;
}

double PrimitiveGradientError(const GradCase& c, int instance) {
  Rng rng(DeriveSeed(17, static_cast<std::uint64_t>(instance)));
  Tensor x = Tensor::Randn(c.rows, c.cols, rng);
  for (double& v : x.data()) v = c.offset > 0 ? c.offset + std::abs(v) : v;
  const std::uint64_t aux_seed = rng.NextU64();
  auto f = [&](Tape& tape, Var input) {
    Rng aux(aux_seed);
    return c.build(tape, input, aux);
  };
  return GradientError(f, x);
}

double DotRows(const Tensor& z, int i, int j) {
  double s = 0.0;
  for (int c = 0; c < z.cols(); ++c) s += z(i, c) * z(j, c);
  return s;
}

Tensor UnitRows(int rows, int cols, Rng& rng) {
  Tensor z = Tensor::Randn(rows, cols, rng, 1.0);
  for (int r = 0; r < rows; ++r) {
    double norm = 0.0;
    for (int c = 0; c < cols; ++c) norm += z(r, c) * z(r, c);
    for (int c = 0; c < cols; ++c) z(r, c) /= std::sqrt(norm);
  }
  return z;
}

double NaiveNce(const Tensor& z, double temperature) {
  double total = 0.0;
  for (int i = 0; i < z.rows(); ++i) total += NaiveTerm(z, i, i ^ 1, temperature);
  return total / z.rows();
}

double NaiveSupCon(const Tensor& z, const training::BatchPlan& plan) {
  double total = 0.0;
  int anchors = 0;
  for (int i = 0; i < z.rows(); ++i) {
    if (!plan.labels[i]) continue;
    double inner = 0.0;
    int positives = 0;
    for (int q = 0; q < z.rows(); ++q) {
      if (q == i || plan.labels[q] != plan.labels[i]) continue;
      inner += NaiveTerm(z, i, q, plan.temperature);
      ++positives;
    }
    if (positives == 0) continue;
    total += inner / positives;
    ++anchors;
  }
  return total / anchors;
}

minic::Function ApplyAt(const minic::Function& fn, const transforms::Site& site,
                        transforms::Op op) {
  using transforms::Op;
  switch (op) {
    case Op::kFunctionRename:
    case Op::kVariableRename: return transforms::ApplyRename(fn, site.path, "zz_fresh");
    case Op::kOperandSwap: return transforms::ApplyOperandSwap(fn, site.path);
    case Op::kStatementSwap: return transforms::ApplyStatementSwap(fn, site.path);
    case Op::kLoopExchange: return transforms::ApplyLoopExchange(fn, site.path);
    case Op::kBlockSwap: return transforms::ApplyBlockSwap(fn, site.path);
    case Op::kSwitchToIf: return transforms::ApplySwitchToIf(fn, site.path);
  }
  return fn;
}

std::vector<std::vector<std::int64_t>> InputVectors(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::vector<std::int64_t>> out(16);
  for (auto& v : out) {
    v.resize(rng.Index(9));
    for (auto& x : v) x = rng.UniformInt(-4, 8);
  }
  return out;
}

}  // namespace vulnlens::testing
