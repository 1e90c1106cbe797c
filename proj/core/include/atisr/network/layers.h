// atisr/network/layers.h

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

#ifndef ATISR_NETWORK_LAYERS_H_
#define ATISR_NETWORK_LAYERS_H_

#include <cstddef>
#include <span>
#include <string>

#include "atisr/corpus/vocabulary.h"
#include "atisr/numerics/optim.h"
#include "atisr/numerics/random.h"
#include "atisr/numerics/tensor.h"

namespace atisr {

/// fan_in x fan_out weights, uniform in +-sqrt(6 / (fan_in + fan_out)).
Tensor GlorotUniform(std::size_t fan_in, std::size_t fan_out, Rng& rng, std::string name);

/// Creates an all-zero parameter.
Tensor ZeroParameter(const Shape& shape, std::string name);

/// x W + b.
class Affine {
 public:
  Affine() = default;
  Affine(std::size_t in, std::size_t out, Rng& rng, const std::string& name);

  Tensor Forward(const Tensor& x) const;
  void CollectParameters(ParameterList& out) const;

  std::size_t in_dim() const { return weight_.rows(); }
  std::size_t out_dim() const { return weight_.cols(); }

 private:
  Tensor weight_;
  Tensor bias_;
};

class Embedding {
 public:
  Embedding() = default;
  Embedding(std::size_t vocab_size, std::size_t dim, Rng& rng, const std::string& name);

  /// One row per id. Throws DataError for ids outside the table.
  Tensor Lookup(std::span<const TokenId> ids) const;
  void CollectParameters(ParameterList& out) const;

  std::size_t vocab_size() const { return table_.rows(); }
  std::size_t dim() const { return table_.cols(); }

 private:
  Tensor table_;
};

struct LstmState {
  Tensor h;  // 1 x H
  Tensor c;  // 1 x H
};

/// Gated recurrent layer with gates [input, forget, cell, output].
/// Forget-gate bias starts at +1, the other biases at 0.
class Lstm {
 public:
  Lstm() = default;
  Lstm(std::size_t in, std::size_t hidden, Rng& rng, const std::string& name);

  LstmState ZeroState() const;

  /// Runs over all rows of `x` (T x in). Returns T x 2H, row t = [h_t, c_t].
  Tensor Forward(const Tensor& x, const LstmState& init, bool reverse = false) const;

  /// Hidden outputs (T x H) of a packed Forward() result.
  Tensor Hidden(const Tensor& packed) const;
  /// State stored in row `row` of a packed Forward() result.
  LstmState StateAt(const Tensor& packed, std::size_t row) const;

  void CollectParameters(ParameterList& out) const;

  std::size_t in_dim() const { return input_weight_.rows(); }
  std::size_t hidden() const { return recurrent_weight_.rows(); }

 private:
  Tensor input_weight_;      // in x 4H
  Tensor recurrent_weight_;  // H x 4H
  Tensor bias_;              // 1 x 4H
};

}  // namespace atisr

#endif  // ATISR_NETWORK_LAYERS_H_
