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

#include "vulnlens/tensor/tensor.h"

namespace vulnlens::tensor {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  ParamSet first_moment;
  ParamSet second_moment;
  long step = 0;
};

// One bias-corrected Adam update in place. Every gradient must name an
// existing parameter of equal shape; parameters without a gradient entry are
// left untouched.
void AdamStep(ParamSet& params, const ParamSet& grads, AdamState& state,
              const AdamConfig& config);

}  // namespace vulnlens::tensor
