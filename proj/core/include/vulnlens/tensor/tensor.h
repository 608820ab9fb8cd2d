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

#include <cstddef>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

namespace vulnlens {
class Rng;
}

namespace vulnlens::tensor {

// Dense row-major matrix of doubles. Construction from data rejects
// non-finite values; element writes through the mutable accessors do not
// re-check.
class Tensor {
 public:
  Tensor() = default;
  Tensor(int rows, int cols, double fill = 0.0);
  Tensor(int rows, int cols, std::vector<double> data);

  static Tensor Scalar(double value) { return Tensor(1, 1, value); }
  static Tensor FromRows(std::initializer_list<std::initializer_list<double>> rows);
  // Entries drawn from N(0, scale^2).
  static Tensor Randn(int rows, int cols, Rng& rng, double scale = 1.0);
  // Glorot-uniform initialisation for a fan_in x fan_out weight.
  static Tensor Glorot(int fan_in, int fan_out, Rng& rng);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }
  bool SameShape(const Tensor& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  std::string ShapeString() const;

  double& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }
  double& operator[](std::size_t i) { return data_[i]; }
  double operator[](std::size_t i) const { return data_[i]; }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }
  // Value of a 1x1 tensor.
  double item() const;

  bool requires_grad() const { return requires_grad_; }
  void set_requires_grad(bool value) { requires_grad_ = value; }

  bool AllFinite() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
  bool requires_grad_ = false;
};

// Named parameters of a model. Ordered by name so iteration is deterministic.
using ParamSet = std::map<std::string, Tensor>;

// Throws ShapeError unless `a` and `b` have equal shapes.
void CheckSameShape(const Tensor& a, const Tensor& b, const char* what);

// Elementwise helpers on plain tensors (no taping).
Tensor Add(const Tensor& a, const Tensor& b);
Tensor Sub(const Tensor& a, const Tensor& b);
Tensor Scaled(const Tensor& a, double factor);
double Dot(const Tensor& a, const Tensor& b);
double SquaredNorm(const Tensor& a);
double MaxAbsDiff(const Tensor& a, const Tensor& b);
Tensor MatMulPlain(const Tensor& a, const Tensor& b);
ParamSet ZerosLike(const ParamSet& params);
void Accumulate(ParamSet& into, const ParamSet& grads);

}  // namespace vulnlens::tensor
