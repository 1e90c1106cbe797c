// network/encoder.cc

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

#include "atisr/network/encoder.h"

#include <string>
#include <vector>

#include "atisr/error.h"
#include "atisr/numerics/ops.h"

namespace atisr {

EncoderStack::EncoderStack(std::size_t feature_dim, std::size_t projection_dim,
                           std::size_t hidden, Rng& rng)
    : projection_(feature_dim, projection_dim, rng, "encoder.projection"), hidden_(hidden) {
  std::size_t in = projection_dim;
  for (std::size_t l = 0; l < kEncoderLayers; ++l) {
    const std::string prefix = "encoder.layer" + std::to_string(l);
    forward_[l] = Lstm(in, hidden, rng, prefix + ".forward");
    backward_[l] = Lstm(in, hidden, rng, prefix + ".backward");
    in = 2 * hidden;
  }
}

EncoderCarry EncoderStack::ZeroCarry() const {
  EncoderCarry carry;
  for (std::size_t l = 0; l < kEncoderLayers; ++l) carry.forward[l] = forward_[l].ZeroState();
  return carry;
}

EncoderOutput EncoderStack::Encode(const Tensor& x, const EncoderCarry* carry,
                                   std::size_t carry_frames) const {
  if (x.cols() != feature_dim()) {
    throw ConfigurationError("encoder expects " + std::to_string(feature_dim()) +
                             "-dim features, got " + std::to_string(x.cols()));
  }
  const std::size_t frames = x.rows();
  if (frames == 0) throw DimensionError("encoder: empty input");
  const std::size_t padded = BlockCount(frames) * kFramesPerBlock;
  if (carry_frames == 0) carry_frames = padded;
  if (carry_frames % kFramesPerBlock != 0 || carry_frames > padded) {
    throw UsageError("encoder: carry position " + std::to_string(carry_frames) +
                     " must be a block boundary within " + std::to_string(padded) + " frames");
  }

  Tensor h = x;
  if (padded != frames) {
    std::vector<Tensor> parts{x, Tensor::Zeros({padded - frames, x.cols()})};
    h = ConcatRows(parts);
  }
  h = Tanh(projection_.Forward(h));

  EncoderOutput out;
  std::size_t length = padded;
  std::size_t carry_row = carry_frames;
  for (std::size_t l = 0; l < kEncoderLayers; ++l) {
    const LstmState fwd_init = carry ? carry->forward[l] : forward_[l].ZeroState();
    Tensor fwd = forward_[l].Forward(h, fwd_init, /*reverse=*/false);
    Tensor bwd = backward_[l].Forward(h, backward_[l].ZeroState(), /*reverse=*/true);
    out.carry.forward[l] = forward_[l].StateAt(fwd, carry_row - 1);
    Tensor both = ConcatCols(forward_[l].Hidden(fwd), backward_[l].Hidden(bwd));
    std::vector<std::size_t> keep;
    for (std::size_t t = 0; t < length; t += 2) keep.push_back(t);
    h = GatherRows(both, keep);
    length = keep.size();
    carry_row /= 2;
  }
  out.states = h;
  return out;
}

void EncoderStack::CollectParameters(ParameterList& out) const {
  projection_.CollectParameters(out);
  for (std::size_t l = 0; l < kEncoderLayers; ++l) {
    forward_[l].CollectParameters(out);
    backward_[l].CollectParameters(out);
  }
}

Tensor FeaturesToTensor(const FeatureSequence& features) {
  if (features.frames == 0 || features.dim == 0) {
    throw DimensionError("empty feature sequence");
  }
  std::vector<double> data(features.values.begin(), features.values.end());
  return Tensor::FromData({features.frames, features.dim}, std::move(data));
}

Tensor FeatureWindow(const FeatureSequence& features, std::ptrdiff_t begin, std::ptrdiff_t end) {
  if (end <= begin) throw DimensionError("empty feature window");
  const auto rows = static_cast<std::size_t>(end - begin);
  std::vector<double> data(rows * features.dim, 0.0);
  for (std::ptrdiff_t f = std::max<std::ptrdiff_t>(begin, 0);
       f < std::min<std::ptrdiff_t>(end, static_cast<std::ptrdiff_t>(features.frames)); ++f) {
    const auto src = static_cast<std::size_t>(f) * features.dim;
    const auto dst = static_cast<std::size_t>(f - begin) * features.dim;
    for (std::size_t d = 0; d < features.dim; ++d) data[dst + d] = features.values[src + d];
  }
  return Tensor::FromData({rows, features.dim}, std::move(data));
}

}  // namespace atisr
