// network/attention.cc

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

#include "atisr/network/attention.h"

#include "atisr/error.h"
#include "atisr/numerics/ops.h"

namespace atisr {

std::string ToString(ScorerKind kind) {
  switch (kind) {
    case ScorerKind::kDot: return "dot";
    case ScorerKind::kBilinear: return "bilinear";
    case ScorerKind::kMlp: return "mlp";
  }
  return "?";
}

ScorerKind ParseScorerKind(const std::string& name) {
  if (name == "dot") return ScorerKind::kDot;
  if (name == "bilinear") return ScorerKind::kBilinear;
  if (name == "mlp") return ScorerKind::kMlp;
  throw ConfigurationError("unknown attention scorer '" + name + "'");
}

AttentionScorer::AttentionScorer(ScorerKind kind, std::size_t encoder_dim,
                                 std::size_t decoder_dim, std::size_t hidden, Rng& rng)
    : kind_(kind), encoder_dim_(encoder_dim), decoder_dim_(decoder_dim) {
  switch (kind) {
    case ScorerKind::kDot:
      if (encoder_dim != decoder_dim) {
        throw ConfigurationError("dot attention needs equal encoder and decoder sizes, got " +
                                 std::to_string(encoder_dim) + " and " +
                                 std::to_string(decoder_dim));
      }
      break;
    case ScorerKind::kBilinear:
      weight_ = GlorotUniform(encoder_dim, decoder_dim, rng, "attention.weight");
      break;
    case ScorerKind::kMlp:
      weight_ = GlorotUniform(encoder_dim + decoder_dim, hidden, rng, "attention.weight");
      vector_ = GlorotUniform(hidden, 1, rng, "attention.vector");
      break;
  }
}

namespace {

void CheckVector(const Tensor& t, std::size_t n, const char* what) {
  if (t.size() != n) {
    throw ConfigurationError(std::string("attention: ") + what + " has " +
                             std::to_string(t.size()) + " features, expected " + std::to_string(n));
  }
}

}  // namespace

Tensor AttentionScorer::Score(const Tensor& h_e, const Tensor& h_d) const {
  CheckVector(h_e, encoder_dim_, "encoder state");
  CheckVector(h_d, decoder_dim_, "decoder state");
  switch (kind_) {
    case ScorerKind::kDot:
      return Dot(h_e, h_d);
    case ScorerKind::kBilinear:
      return MatMul(MatMul(h_e, weight_), Transpose(h_d));
    case ScorerKind::kMlp:
      return MatMul(Tanh(MatMul(ConcatCols(h_e, h_d), weight_)), vector_);
  }
  return {};
}

AttentionKeys AttentionScorer::Prepare(const Tensor& encoder_states) const {
  if (!encoder_states.defined() || encoder_states.size() == 0) {
    throw DimensionError("attention over an empty encoder sequence");
  }
  if (encoder_states.cols() != encoder_dim_) {
    throw ConfigurationError("attention: encoder states have " +
                             std::to_string(encoder_states.cols()) + " features, expected " +
                             std::to_string(encoder_dim_));
  }
  AttentionKeys keys{encoder_states, {}};
  if (kind_ == ScorerKind::kMlp) {
    keys.projected = MatMul(encoder_states, SliceRows(weight_, 0, encoder_dim_));
  }
  return keys;
}

AttentionResult AttentionScorer::Attend(const AttentionKeys& keys, const Tensor& h_d) const {
  CheckVector(h_d, decoder_dim_, "decoder state");
  Tensor scores;  // 1 x S'
  switch (kind_) {
    case ScorerKind::kDot:
      scores = MatMul(h_d, Transpose(keys.states));
      break;
    case ScorerKind::kBilinear:
      scores = MatMul(MatMul(h_d, Transpose(weight_)), Transpose(keys.states));
      break;
    case ScorerKind::kMlp: {
      Tensor query = MatMul(h_d, SliceRows(weight_, encoder_dim_, encoder_dim_ + decoder_dim_));
      scores = Transpose(MatMul(Tanh(AddRow(keys.projected, query)), vector_));
      break;
    }
  }
  Tensor weights = Softmax(scores);
  return {MatMul(weights, keys.states), weights};
}

void AttentionScorer::CollectParameters(ParameterList& out) const {
  if (weight_.defined()) out.push_back({weight_.name(), weight_});
  if (vector_.defined()) out.push_back({vector_.name(), vector_});
}

AttentionResult AttentionContext(const AttentionScorer& scorer, const Tensor& encoder_states,
                                 const Tensor& h_d) {
  return scorer.Attend(scorer.Prepare(encoder_states), h_d);
}

}  // namespace atisr
