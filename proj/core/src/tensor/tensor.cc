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

#include "vulnlens/tensor/tensor.h"

#include <cmath>

#include "vulnlens/common/error.h"
#include "vulnlens/common/rng.h"

namespace vulnlens::tensor {

Tensor::Tensor(int rows, int cols, double fill) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw ShapeError("negative tensor dimension");
  if (!std::isfinite(fill)) throw NonFiniteError("non-finite tensor fill value");
  data_.assign(static_cast<std::size_t>(rows) * cols, fill);
}

Tensor::Tensor(int rows, int cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows < 0 || cols < 0) throw ShapeError("negative tensor dimension");
  if (data_.size() != static_cast<std::size_t>(rows) * cols) {
    throw ShapeError("tensor data length " + std::to_string(data_.size()) +
                     " does not match shape " + ShapeString());
  }
  if (!AllFinite()) throw NonFiniteError("non-finite value in tensor data");
}

Tensor Tensor::FromRows(std::initializer_list<std::initializer_list<double>> rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(r) * c);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c) throw ShapeError("ragged rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return Tensor(r, c, std::move(data));
}

Tensor Tensor::Randn(int rows, int cols, Rng& rng, double scale) {
  Tensor t(rows, cols);
  for (double& x : t.data_) x = scale * rng.Normal();
  return t;
}

Tensor Tensor::Glorot(int fan_in, int fan_out, Rng& rng) {
  const double limit = std::sqrt(6.0 / (fan_in + fan_out));
  Tensor t(fan_in, fan_out);
  for (double& x : t.data_) x = rng.Uniform(-limit, limit);
  return t;
}

std::string Tensor::ShapeString() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

double Tensor::item() const {
  if (rows_ != 1 || cols_ != 1) throw ShapeError("item() on a " + ShapeString() + " tensor");
  return data_[0];
}

bool Tensor::AllFinite() const {
  for (double x : data_) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

void CheckSameShape(const Tensor& a, const Tensor& b, const char* what) {
  if (!a.SameShape(b)) {
    throw ShapeError(std::string(what) + ": shapes " + a.ShapeString() + " and " +
                     b.ShapeString() + " differ");
  }
}

Tensor Add(const Tensor& a, const Tensor& b) {
  CheckSameShape(a, b, "add");
  Tensor out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

Tensor Sub(const Tensor& a, const Tensor& b) {
  CheckSameShape(a, b, "sub");
  Tensor out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

Tensor Scaled(const Tensor& a, double factor) {
  Tensor out = a;
  for (double& x : out.data()) x *= factor;
  return out;
}

double Dot(const Tensor& a, const Tensor& b) {
  CheckSameShape(a, b, "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double SquaredNorm(const Tensor& a) { return Dot(a, a); }

double MaxAbsDiff(const Tensor& a, const Tensor& b) {
  CheckSameShape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Tensor MatMulPlain(const Tensor& a, const Tensor& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("matmul: " + a.ShapeString() + " times " + b.ShapeString());
  }
  Tensor out(a.rows(), b.cols());
  const int n = a.rows(), k_dim = a.cols(), m = b.cols();
  const double* pa = a.data().data();
  const double* pb = b.data().data();
  double* po = out.data().data();
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < k_dim; ++k) {
      const double aik = pa[static_cast<std::size_t>(i) * k_dim + k];
      if (aik == 0.0) continue;
      const double* brow = pb + static_cast<std::size_t>(k) * m;
      double* orow = po + static_cast<std::size_t>(i) * m;
      for (int j = 0; j < m; ++j) orow[j] += aik * brow[j];
    }
  }
  return out;
}

ParamSet ZerosLike(const ParamSet& params) {
  ParamSet out;
  for (const auto& [name, t] : params) out.emplace(name, Tensor(t.rows(), t.cols()));
  return out;
}

void Accumulate(ParamSet& into, const ParamSet& grads) {
  for (const auto& [name, g] : grads) {
    auto it = into.find(name);
    if (it == into.end()) {
      into.emplace(name, g);
      continue;
    }
    CheckSameShape(it->second, g, "accumulate");
    for (std::size_t i = 0; i < g.size(); ++i) it->second[i] += g[i];
  }
}

}  // namespace vulnlens::tensor
