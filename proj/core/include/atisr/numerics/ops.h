// atisr/numerics/ops.h

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

// Differentiable primitives. Each op computes its value eagerly and, when an
// input requires a gradient and a tape is active, records its adjoint.
// Matrix ops view rank-0/1 operands as a single row.

#ifndef ATISR_NUMERICS_OPS_H_
#define ATISR_NUMERICS_OPS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "atisr/numerics/tensor.h"

namespace atisr {

Tensor MatMul(const Tensor& a, const Tensor& b);
Tensor Transpose(const Tensor& a);

Tensor Add(const Tensor& a, const Tensor& b);
Tensor Sub(const Tensor& a, const Tensor& b);
Tensor Mul(const Tensor& a, const Tensor& b);
Tensor Scale(const Tensor& a, double factor);
/// a[m x n] + row[1 x n], broadcast over rows.
Tensor AddRow(const Tensor& a, const Tensor& row);

Tensor Tanh(const Tensor& a);
Tensor Sigmoid(const Tensor& a);

/// Softmax of each row, with max subtraction. Keeps the input shape.
Tensor Softmax(const Tensor& a);

/// Sum of all elements, as a scalar.
Tensor Sum(const Tensor& a);
/// Inner product of two equally sized tensors, as a scalar.
Tensor Dot(const Tensor& a, const Tensor& b);

Tensor ConcatCols(const Tensor& a, const Tensor& b);
Tensor ConcatRows(std::span<const Tensor> parts);
Tensor SliceRows(const Tensor& a, std::size_t begin, std::size_t end);
Tensor SliceCols(const Tensor& a, std::size_t begin, std::size_t end);
/// out[i] = a[indices[i]]; repeated indices accumulate in the adjoint.
Tensor GatherRows(const Tensor& a, std::span<const std::size_t> indices);

/// Gated recurrent scan over a whole sequence.
///
/// `gate_inputs` holds the input contributions x_t W + b for the four gates
/// [input, forget, cell, output], shape T x 4H. `recurrent` is H x 4H.
/// Returns T x 2H: row t is [h_t, c_t] (indexed by input position also when
/// `reverse` scans from the last row to the first).
Tensor LstmScan(const Tensor& gate_inputs, const Tensor& recurrent,
                const Tensor& h0, const Tensor& c0, bool reverse);

}  // namespace atisr

#endif  // ATISR_NUMERICS_OPS_H_
