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

#include <vector>

#include "vulnlens/tensor/tape.h"

namespace vulnlens::tensor {

// Differentiable primitives. All inputs must live on the same tape. Shape
// violations throw ShapeError, non-finite results throw NonFiniteError.

Var MatMul(Var a, Var b);
Var Transpose(Var a);
Var Add(Var a, Var b);
Var Sub(Var a, Var b);
// Elementwise (Hadamard) product.
Var Mul(Var a, Var b);
Var Scale(Var a, double factor);
Var AddScalar(Var a, double value);
// 1 - a, elementwise.
Var OneMinus(Var a);
// Adds a 1 x cols row vector to every row of `a`.
Var AddRow(Var a, Var row);

Var Sigmoid(Var a);
// Subgradient 0 at 0.
Var Relu(Var a);
Var Tanh(Var a);
Var Exp(Var a);
// Requires strictly positive input.
Var Log(Var a);

// 1x1 results.
Var Sum(Var a);
Var Mean(Var a);
// Sum of absolute values; subgradient 0 at 0.
Var L1Norm(Var a);

// Each row divided by max(||row||_2, eps).
Var RowL2Normalize(Var a, double eps = 1e-12);
// Each row divided by its sum. Rows must have positive sums.
Var RowStochastic(Var a);
// Row-wise log-softmax restricted to entries where mask(r, c) != 0. Masked
// entries of the result are 0 and receive no gradient. Every row needs at
// least one unmasked entry. Uses log-sum-exp stabilisation.
Var MaskedLogSoftmax(Var logits, const Tensor& mask);
Var LogSoftmax(Var logits);

// Pooling over rows: V x d -> 1 x d.
Var MeanPoolRows(Var a);
// Gradient goes to the first maximal row for each column.
Var MaxPoolRows(Var a);

Var ConcatCols(const std::vector<Var>& parts);
Var ConcatRows(const std::vector<Var>& parts);
Var SliceRows(Var a, int begin, int end);
// 1x1 view of one entry.
Var Pick(Var a, int row, int col);

// Places edge_values(e, 0) at (src[e], dst[e]) of a num_nodes x num_nodes
// matrix; with `symmetric` also at (dst[e], src[e]). Duplicate positions add.
Var ScatterEdges(Var edge_values, const std::vector<int>& src, const std::vector<int>& dst,
                 int num_nodes, bool symmetric);

}  // namespace vulnlens::tensor
