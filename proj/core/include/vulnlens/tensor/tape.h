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

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "vulnlens/tensor/tensor.h"

namespace vulnlens::tensor {

class Tape;

// Handle to a value recorded on a tape. Cheap to copy; only valid while the
// owning tape is alive.
struct Var {
  Tape* tape = nullptr;
  int id = -1;

  const Tensor& value() const;
  const Tensor& grad() const;
  int rows() const { return value().rows(); }
  int cols() const { return value().cols(); }
};

// Records primitive operations in execution order and replays them in
// reverse to accumulate vector-Jacobian products. Single-threaded.
class Tape {
 public:
  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  // Leaf without gradient.
  Var Constant(Tensor value);
  // Leaf whose gradient is accumulated by Backward.
  Var Leaf(Tensor value);

  // Seeds d(root) = 1 for a 1x1 root, or `seed` for any shape, and
  // propagates to every leaf. May be called once per tape.
  void Backward(Var root);
  void Backward(Var root, const Tensor& seed);

  const Tensor& value(int id) const { return nodes_[id].value; }
  // Gradient of a node after Backward; zeros if it did not influence the root.
  const Tensor& grad(int id) const;
  bool needs_grad(int id) const { return nodes_[id].needs_grad; }
  std::size_t size() const { return nodes_.size(); }

  // Used by primitive implementations. `backward` receives the node's
  // upstream gradient and adds into the inputs through AddGrad.
  using BackwardFn = std::function<void(Tape&, const Tensor& upstream)>;
  Var Record(Tensor value, std::vector<int> inputs, BackwardFn backward);
  void AddGrad(int id, const Tensor& delta);
  Tensor& MutableGrad(int id);

 private:
  struct Node {
    Tensor value;
    Tensor grad;
    bool needs_grad = false;
    bool has_grad = false;
    BackwardFn backward;
  };
  std::vector<Node> nodes_;
  bool backward_done_ = false;
};

}  // namespace vulnlens::tensor
