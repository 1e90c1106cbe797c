// network/decoder.cc

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

#include "atisr/network/decoder.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "atisr/error.h"
#include "atisr/numerics/ops.h"

namespace atisr {

DecoderCell::DecoderCell(std::size_t vocab_size, std::size_t embedding_dim, std::size_t hidden,
                         std::size_t context_dim, Rng& rng)
    : embedding_(vocab_size, embedding_dim, rng, "decoder.embedding"),
      recurrent_(embedding_dim + context_dim, hidden, rng, "decoder.recurrent"),
      output_(hidden + context_dim, vocab_size, rng, "decoder.output"),
      context_dim_(context_dim) {}

DecoderState DecoderCell::InitialState() const {
  LstmState zero = recurrent_.ZeroState();
  return {zero.h, zero.c, Tensor::Zeros({1, context_dim_})};
}

DecoderStepResult DecoderCell::Step(const AttentionScorer& scorer, const AttentionKeys& keys,
                                    TokenId previous, const DecoderState& state) const {
  const TokenId ids[1] = {previous};
  Tensor input = ConcatCols(embedding_.Lookup(ids), state.context);
  Tensor packed = recurrent_.Forward(input, {state.h, state.c});
  LstmState next = recurrent_.StateAt(packed, 0);
  AttentionResult att = scorer.Attend(keys, next.h);
  Tensor dist = Softmax(output_.Forward(ConcatCols(next.h, att.context)));
  return {dist, {next.h, next.c, att.context}, att.weights};
}

void DecoderCell::CollectParameters(ParameterList& out) const {
  embedding_.CollectParameters(out);
  recurrent_.CollectParameters(out);
  output_.CollectParameters(out);
}

DecoderStepResult DecodeStep(const DecoderCell& cell, const AttentionScorer& scorer,
                             TokenId previous, const DecoderState& state,
                             const Tensor& encoder_states) {
  return cell.Step(scorer, scorer.Prepare(encoder_states), previous, state);
}

Tensor CrossEntropyLoss(const Tensor& probabilities, std::span<const TokenId> targets) {
  const std::size_t steps = probabilities.rows(), classes = probabilities.cols();
  if (targets.size() != steps) {
    throw DimensionError("cross-entropy: " + std::to_string(targets.size()) + " targets for " +
                         std::to_string(steps) + " prediction rows");
  }
  for (std::size_t t = 0; t < steps; ++t) {
    if (targets[t] < 0 || static_cast<std::size_t>(targets[t]) >= classes) {
      throw DataError("cross-entropy: target " + std::to_string(targets[t]) + " at position " +
                      std::to_string(t) + " outside " + std::to_string(classes) + " classes");
    }
  }
  auto p = probabilities.data();
  double total = 0.0;
  for (std::size_t t = 0; t < steps; ++t) {
    total -= std::log(std::max(p[t * classes + static_cast<std::size_t>(targets[t])], kLogFloor));
  }
  const double inv = 1.0 / static_cast<double>(steps);
  Tensor out = Tensor::Scalar(total * inv);
  if (ShouldRecord({&probabilities})) {
    std::vector<TokenId> ids(targets.begin(), targets.end());
    GradTape::Active()->Record(out, [probabilities, ids, classes, inv](
                                        GradTape& tape, std::span<const double> g) {
      auto gp = tape.GradOf(probabilities);
      auto p = probabilities.data();
      for (std::size_t t = 0; t < ids.size(); ++t) {
        const std::size_t k = t * classes + static_cast<std::size_t>(ids[t]);
        if (p[k] > kLogFloor) gp[k] -= g[0] * inv / p[k];
      }
    });
  }
  return out;
}

std::size_t ArgMax(const Tensor& t, std::size_t row) {
  auto d = t.data();
  const std::size_t n = t.cols();
  std::size_t best = 0;
  for (std::size_t j = 1; j < n; ++j) {
    if (d[row * n + j] > d[row * n + best]) best = j;
  }
  return best;
}

}  // namespace atisr
