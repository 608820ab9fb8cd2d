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

#include <algorithm>
#include <cmath>
#include <functional>

#include "vulnlens/tensor/ops.h"
#include "vulnlens/tensor/tape.h"

namespace vulnlens::testing {

// ||a - b|| / max(||a||, ||b||, 1e-8)
inline double RelativeError(const tensor::Tensor& a, const tensor::Tensor& b) {
  const double diff = std::sqrt(tensor::SquaredNorm(tensor::Sub(a, b)));
  const double scale =
      std::max({std::sqrt(tensor::SquaredNorm(a)), std::sqrt(tensor::SquaredNorm(b)), 1e-8});
  return diff / scale;
}

// Scalar function of one input, built freshly on a tape each call.
using ScalarFn = std::function<tensor::Var(tensor::Tape&, tensor::Var)>;

inline tensor::Tensor AnalyticGradient(const ScalarFn& f, const tensor::Tensor& x) {
  tensor::Tape tape;
  tensor::Var input = tape.Leaf(x);
  tensor::Var out = f(tape, input);
  tape.Backward(out);
  return input.grad();
}

// Central differences, step h.
inline tensor::Tensor NumericGradient(const ScalarFn& f, const tensor::Tensor& x,
                                      double h = 1e-5) {
  tensor::Tensor grad(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.size(); ++i) {
    tensor::Tensor plus = x, minus = x;
    plus[i] += h;
    minus[i] -= h;
    tensor::Tape tp, tm;
    const double fp = f(tp, tp.Constant(plus)).value().item();
    const double fm = f(tm, tm.Constant(minus)).value().item();
    grad[i] = (fp - fm) / (2 * h);
  }
  return grad;
}

inline double GradientError(const ScalarFn& f, const tensor::Tensor& x, double h = 1e-5) {
  return RelativeError(AnalyticGradient(f, x), NumericGradient(f, x, h));
}

// Reduces a matrix-valued output to a scalar with fixed random weights so
// every output entry contributes to the checked gradient.
inline tensor::Var Project(tensor::Var out, const tensor::Tensor& weights) {
  return tensor::Sum(tensor::Mul(out, out.tape->Constant(weights)));
}

}  // namespace vulnlens::testing
