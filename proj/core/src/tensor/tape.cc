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

#include "vulnlens/tensor/tape.h"

#include "vulnlens/common/error.h"

namespace vulnlens::tensor {

const Tensor& Var::value() const { return tape->value(id); }
const Tensor& Var::grad() const { return tape->grad(id); }

Var Tape::Constant(Tensor value) {
  if (!value.AllFinite()) throw NonFiniteError("non-finite constant");
  nodes_.push_back(Node{std::move(value), Tensor(), false, false, nullptr});
  return Var{this, static_cast<int>(nodes_.size()) - 1};
}

Var Tape::Leaf(Tensor value) {
  if (!value.AllFinite()) throw NonFiniteError("non-finite leaf");
  value.set_requires_grad(true);
  nodes_.push_back(Node{std::move(value), Tensor(), true, false, nullptr});
  return Var{this, static_cast<int>(nodes_.size()) - 1};
}

Var Tape::Record(Tensor value, std::vector<int> inputs, BackwardFn backward) {
  if (!value.AllFinite()) throw NonFiniteError("operation produced a non-finite value");
  bool needs = false;
  for (int id : inputs) needs = needs || nodes_[id].needs_grad;
  nodes_.push_back(Node{std::move(value), Tensor(), needs, false,
                        needs ? std::move(backward) : nullptr});
  return Var{this, static_cast<int>(nodes_.size()) - 1};
}

Tensor& Tape::MutableGrad(int id) {
  Node& node = nodes_[id];
  if (!node.has_grad) {
    node.grad = Tensor(node.value.rows(), node.value.cols());
    node.has_grad = true;
  }
  return node.grad;
}

void Tape::AddGrad(int id, const Tensor& delta) {
  if (!nodes_[id].needs_grad) return;
  Tensor& g = MutableGrad(id);
  CheckSameShape(g, delta, "gradient accumulation");
  for (std::size_t i = 0; i < g.size(); ++i) g[i] += delta[i];
}

const Tensor& Tape::grad(int id) const {
  const Node& node = nodes_[id];
  if (!node.has_grad) {
    // Materialise zeros lazily so callers always receive the right shape.
    auto& self = const_cast<Tape&>(*this);
    return self.MutableGrad(id);
  }
  return node.grad;
}

void Tape::Backward(Var root) {
  if (root.value().rows() != 1 || root.value().cols() != 1) {
    throw ShapeError("Backward without a seed needs a 1x1 root, got " +
                     root.value().ShapeString());
  }
  Backward(root, Tensor::Scalar(1.0));
}

void Tape::Backward(Var root, const Tensor& seed) {
  if (root.tape != this) throw ShapeError("root does not belong to this tape");
  if (backward_done_) throw ShapeError("Backward called twice on one tape");
  backward_done_ = true;
  CheckSameShape(nodes_[root.id].value, seed, "backward seed");
  if (!nodes_[root.id].needs_grad) return;
  AddGrad(root.id, seed);
  for (int id = root.id; id >= 0; --id) {
    Node& node = nodes_[id];
    if (!node.has_grad || !node.backward) continue;
    // Copy: the closure may grow other gradients but never this one.
    const Tensor upstream = node.grad;
    node.backward(*this, upstream);
  }
}

}  // namespace vulnlens::tensor
