// atisr/network/encoder.h

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

#ifndef ATISR_NETWORK_ENCODER_H_
#define ATISR_NETWORK_ENCODER_H_

#include <array>
#include <cstddef>
#include <optional>

#include "atisr/corpus/dataset.h"
#include "atisr/network/layers.h"

namespace atisr {

inline constexpr std::size_t kEncoderLayers = 3;
/// Frames per encoder state (one block): x2 per layer, three layers.
inline constexpr std::size_t kFramesPerBlock = 8;

/// Rounds `frames` up to whole blocks.
inline std::size_t BlockCount(std::size_t frames) {
  return (frames + kFramesPerBlock - 1) / kFramesPerBlock;
}

/// Forward-direction recurrent states of every layer, threaded between
/// incremental steps in keep-state mode.
struct EncoderCarry {
  std::array<LstmState, kEncoderLayers> forward;
};

struct EncoderOutput {
  Tensor states;  // ceil(S / 8) x 2H
  EncoderCarry carry;
};

/// Feed-forward input projection followed by three bidirectional recurrent
/// layers; after each layer every second timestep is kept (odd indices are
/// dropped). Inputs are right-padded with zero frames to a multiple of 8.
class EncoderStack {
 public:
  EncoderStack() = default;
  EncoderStack(std::size_t feature_dim, std::size_t projection_dim, std::size_t hidden, Rng& rng);

  /// `carry` seeds the forward directions (none: zeros); backward directions
  /// always start from zeros. The returned carry holds the forward states
  /// after the first `carry_frames` input frames (0: all frames);
  /// `carry_frames` must be a multiple of 8.
  EncoderOutput Encode(const Tensor& x, const EncoderCarry* carry = nullptr,
                       std::size_t carry_frames = 0) const;

  EncoderCarry ZeroCarry() const;
  void CollectParameters(ParameterList& out) const;

  std::size_t feature_dim() const { return projection_.in_dim(); }
  std::size_t output_dim() const { return 2 * hidden_; }
  std::size_t hidden() const { return hidden_; }

 private:
  Affine projection_;
  std::array<Lstm, kEncoderLayers> forward_;
  std::array<Lstm, kEncoderLayers> backward_;
  std::size_t hidden_ = 0;
};

/// Features as an S x D tensor of doubles (no gradient).
Tensor FeaturesToTensor(const FeatureSequence& features);

/// Rows [begin, end) of `features`, zero where the range leaves the sequence.
Tensor FeatureWindow(const FeatureSequence& features, std::ptrdiff_t begin, std::ptrdiff_t end);

}  // namespace atisr

#endif  // ATISR_NETWORK_ENCODER_H_
