// network/layers.cc

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

#include "atisr/network/layers.h"

#include <cmath>
#include <vector>

#include "atisr/error.h"
#include "atisr/numerics/ops.h"

namespace atisr {

Tensor GlorotUniform(std::size_t fan_in, std::size_t fan_out, Rng& rng, std::string name) {
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  std::vector<double> data(fan_in * fan_out);
  for (double& v : data) v = rng.Uniform(-limit, limit);
  Tensor t = Tensor::FromData({fan_in, fan_out}, std::move(data));
  t.set_requires_grad(true).set_name(std::move(name));
  return t;
}

Tensor ZeroParameter(const Shape& shape, std::string name) {
  Tensor t = Tensor::Zeros(shape);
  t.set_requires_grad(true).set_name(std::move(name));
  return t;
}

Affine::Affine(std::size_t in, std::size_t out, Rng& rng, const std::string& name)
    : weight_(GlorotUniform(in, out, rng, name + ".weight")),
      bias_(ZeroParameter({1, out}, name + ".bias")) {}

Tensor Affine::Forward(const Tensor& x) const {
  return AddRow(MatMul(x, weight_), bias_);
}

void Affine::CollectParameters(ParameterList& out) const {
  out.push_back({weight_.name(), weight_});
  out.push_back({bias_.name(), bias_});
}

Embedding::Embedding(std::size_t vocab_size, std::size_t dim, Rng& rng, const std::string& name)
    : table_(GlorotUniform(vocab_size, dim, rng, name + ".table")) {}

Tensor Embedding::Lookup(std::span<const TokenId> ids) const {
  std::vector<std::size_t> rows;
  rows.reserve(ids.size());
  for (TokenId id : ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= vocab_size()) {
      throw DataError("token id " + std::to_string(id) + " outside the " +
                      std::to_string(vocab_size()) + "-entry embedding table");
    }
    rows.push_back(static_cast<std::size_t>(id));
  }
  return GatherRows(table_, rows);
}

void Embedding::CollectParameters(ParameterList& out) const {
  out.push_back({table_.name(), table_});
}

Lstm::Lstm(std::size_t in, std::size_t hidden, Rng& rng, const std::string& name)
    : input_weight_(GlorotUniform(in, 4 * hidden, rng, name + ".input_weight")),
      recurrent_weight_(GlorotUniform(hidden, 4 * hidden, rng, name + ".recurrent_weight")),
      bias_(ZeroParameter({1, 4 * hidden}, name + ".bias")) {
  auto b = bias_.mutable_data();
  for (std::size_t j = hidden; j < 2 * hidden; ++j) b[j] = 1.0;
}

LstmState Lstm::ZeroState() const {
  return {Tensor::Zeros({1, hidden()}), Tensor::Zeros({1, hidden()})};
}

Tensor Lstm::Forward(const Tensor& x, const LstmState& init, bool reverse) const {
  if (x.cols() != in_dim()) {
    throw ConfigurationError("lstm expects " + std::to_string(in_dim()) + " input features, got " +
                             std::to_string(x.cols()));
  }
  Tensor gates = AddRow(MatMul(x, input_weight_), bias_);
  return LstmScan(gates, recurrent_weight_, init.h, init.c, reverse);
}

Tensor Lstm::Hidden(const Tensor& packed) const { return SliceCols(packed, 0, hidden()); }

LstmState Lstm::StateAt(const Tensor& packed, std::size_t row) const {
  Tensor r = SliceRows(packed, row, row + 1);
  return {SliceCols(r, 0, hidden()), SliceCols(r, hidden(), 2 * hidden())};
}

void Lstm::CollectParameters(ParameterList& out) const {
  out.push_back({input_weight_.name(), input_weight_});
  out.push_back({recurrent_weight_.name(), recurrent_weight_});
  out.push_back({bias_.name(), bias_});
}

}  // namespace atisr
