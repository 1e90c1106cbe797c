// atisr/network/attention.h

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

#ifndef ATISR_NETWORK_ATTENTION_H_
#define ATISR_NETWORK_ATTENTION_H_

#include <cstddef>
#include <string>

#include "atisr/network/layers.h"

namespace atisr {

enum class ScorerKind { kDot, kBilinear, kMlp };

std::string ToString(ScorerKind kind);
ScorerKind ParseScorerKind(const std::string& name);

/// Encoder states with any per-utterance precomputation of the scorer.
struct AttentionKeys {
  Tensor states;     // S' x M
  Tensor projected;  // mlp: S' x A (encoder half of W_s applied to every state)
};

struct AttentionResult {
  Tensor context;  // 1 x M
  Tensor weights;  // 1 x S'
};

/// Score(h_e, h_d) in R for encoder size M and decoder size N:
///   dot       <h_e, h_d>                 (requires M == N)
///   bilinear  h_e^T W_s h_d              (W_s: M x N)
///   mlp       V_s^T tanh(W_s [h_e; h_d]) (W_s: (M + N) x A, V_s: A)
class AttentionScorer {
 public:
  AttentionScorer() = default;
  /// Throws ConfigurationError for a dot scorer with M != N.
  AttentionScorer(ScorerKind kind, std::size_t encoder_dim, std::size_t decoder_dim,
                  std::size_t hidden, Rng& rng);

  /// Score of a single pair, evaluated straight from the formula.
  Tensor Score(const Tensor& h_e, const Tensor& h_d) const;

  AttentionKeys Prepare(const Tensor& encoder_states) const;
  /// Softmax over the scores of all states, and the weighted sum of states.
  AttentionResult Attend(const AttentionKeys& keys, const Tensor& h_d) const;

  void CollectParameters(ParameterList& out) const;

  ScorerKind kind() const { return kind_; }
  std::size_t encoder_dim() const { return encoder_dim_; }
  std::size_t decoder_dim() const { return decoder_dim_; }

  // Test hooks for building scorers with known weights.
  Tensor& weight() { return weight_; }
  Tensor& vector() { return vector_; }

 private:
  ScorerKind kind_ = ScorerKind::kMlp;
  std::size_t encoder_dim_ = 0;
  std::size_t decoder_dim_ = 0;
  Tensor weight_;
  Tensor vector_;
};

/// c_t and a_t for decoder state `h_d` over `encoder_states` (S' x M).
/// Throws DimensionError for an empty encoder sequence.
AttentionResult AttentionContext(const AttentionScorer& scorer, const Tensor& encoder_states,
                                 const Tensor& h_d);

}  // namespace atisr

#endif  // ATISR_NETWORK_ATTENTION_H_
