// atisr/network/decoder.h

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

#ifndef ATISR_NETWORK_DECODER_H_
#define ATISR_NETWORK_DECODER_H_

#include <cstddef>
#include <span>

#include "atisr/corpus/vocabulary.h"
#include "atisr/network/attention.h"
#include "atisr/network/layers.h"

namespace atisr {

struct DecoderState {
  Tensor h;        // 1 x N
  Tensor c;        // 1 x N
  Tensor context;  // 1 x M, attention context of the previous step
};

struct DecoderStepResult {
  Tensor distribution;  // 1 x C
  DecoderState state;
  Tensor weights;  // 1 x S'
};

/// Embedding, one recurrent layer, attention, and a softmax output layer.
///
/// The recurrent input is the previous token's embedding concatenated with
/// the previous attention context; the output layer sees [h_t ; c_t].
class DecoderCell {
 public:
  DecoderCell() = default;
  DecoderCell(std::size_t vocab_size, std::size_t embedding_dim, std::size_t hidden,
              std::size_t context_dim, Rng& rng);

  DecoderState InitialState() const;

  DecoderStepResult Step(const AttentionScorer& scorer, const AttentionKeys& keys,
                         TokenId previous, const DecoderState& state) const;

  void CollectParameters(ParameterList& out) const;

  std::size_t vocab_size() const { return embedding_.vocab_size(); }
  std::size_t hidden() const { return recurrent_.hidden(); }
  std::size_t context_dim() const { return context_dim_; }

 private:
  Embedding embedding_;
  Lstm recurrent_;
  Affine output_;
  std::size_t context_dim_ = 0;
};

/// One decoder step from raw encoder states (prepares the attention keys).
DecoderStepResult DecodeStep(const DecoderCell& cell, const AttentionScorer& scorer,
                             TokenId previous, const DecoderState& state,
                             const Tensor& encoder_states);

/// Floor applied inside the logarithm of the cross-entropy.
inline constexpr double kLogFloor = 1e-12;

/// -(1/T) sum_t log max(p_t[y_t], floor) over rows of `probabilities`
/// (T x C, rows already normalized). Throws DataError naming the position of
/// a target outside [0, C).
Tensor CrossEntropyLoss(const Tensor& probabilities, std::span<const TokenId> targets);

/// Index of the largest entry of row `row`; ties go to the lowest index.
std::size_t ArgMax(const Tensor& t, std::size_t row = 0);

}  // namespace atisr

#endif  // ATISR_NETWORK_DECODER_H_
