// atisr/numerics/optim.h

// Copyright 2026 The atisr Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef ATISR_NUMERICS_OPTIM_H_
#define ATISR_NUMERICS_OPTIM_H_

#include <cstdint>
#include <string>
#include <vector>

#include "atisr/numerics/tensor.h"

namespace atisr {

struct NamedTensor {
  std::string name;
  Tensor tensor;
};

using ParameterList = std::vector<NamedTensor>;
/// One flat gradient per parameter, in ParameterList order.
using GradientList = std::vector<std::vector<double>>;

struct AdamHyper {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  std::uint64_t step = 0;
  std::vector<std::vector<double>> first_moment;
  std::vector<std::vector<double>> second_moment;
};

/// Bias-corrected adaptive-moment update, in place on the parameters.
/// Throws OptimizerError naming the first parameter with a non-finite
/// gradient; nothing is updated in that case.
void AdamStep(const ParameterList& params, const GradientList& grads, AdamState& state,
              const AdamHyper& hyper);

double GlobalNorm(const GradientList& grads);

/// Rescales all gradients so their joint L2 norm is at most `max_norm`.
/// Returns the norm before clipping.
double ClipGlobalNorm(GradientList& grads, double max_norm);

/// Collects the gradient of every parameter, zeros where the loss does not
/// reach it.
GradientList CollectGradients(const ParameterList& params, const Gradients& grads);

}  // namespace atisr

#endif  // ATISR_NUMERICS_OPTIM_H_
