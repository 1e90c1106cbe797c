// tests/support/gradient_suite.h

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

// Finite-difference checks of every trainable layer, shared by the unit tests
// and the acceptance runner.

#ifndef ATISR_TESTS_SUPPORT_GRADIENT_SUITE_H_
#define ATISR_TESTS_SUPPORT_GRADIENT_SUITE_H_

#include <string>
#include <vector>

#include "atisr/network/attention.h"
#include "atisr/network/decoder.h"
#include "atisr/network/encoder.h"
#include "atisr/network/layers.h"
#include "atisr/numerics/ops.h"
#include "support/oracles.h"

namespace atisr::testing {

inline constexpr std::size_t kGradCoordinates = 60;
inline constexpr double kGradTolerance = 1e-6;

struct LayerGradCheck {
  std::string layer;
  GradCheckResult result;
};

inline Tensor LeafInput(const Shape& shape, Rng& rng, const char* name) {
  Tensor t = RandomTensor(shape, rng);
  t.set_requires_grad(true);
  t.set_name(name);
  return t;
}

inline std::vector<Tensor> Collect(const ParameterList& params) {
  std::vector<Tensor> out;
  for (const auto& p : params) out.push_back(p.tensor);
  return out;
}

/// A scalar that reaches every element of `t` with its own weight.
inline Tensor Probe(const Tensor& t, std::uint64_t seed) { return Dot(t, RandomProjection(t, seed)); }

inline std::vector<LayerGradCheck> RunGradientSuite(std::uint64_t seed = 2026) {
  std::vector<LayerGradCheck> out;
  Rng rng(seed);

  {
    Affine layer(6, 5, rng, "affine");
    Tensor x = LeafInput({4, 6}, rng, "affine.input");
    ParameterList params;
    layer.CollectParameters(params);
    auto vars = Collect(params);
    vars.push_back(x);
    out.push_back({"affine", GradCheck(vars, [&] { return Probe(layer.Forward(x), 1); }, rng,
                                       kGradCoordinates)});
  }
  {
    Lstm layer(4, 3, rng, "lstm");
    Tensor x = LeafInput({6, 4}, rng, "lstm.input");
    LstmState init{LeafInput({1, 3}, rng, "lstm.h0"), LeafInput({1, 3}, rng, "lstm.c0")};
    ParameterList params;
    layer.CollectParameters(params);
    auto vars = Collect(params);
    vars.insert(vars.end(), {x, init.h, init.c});
    auto loss = [&] {
      return Add(Probe(layer.Forward(x, init, false), 2), Probe(layer.Forward(x, init, true), 3));
    };
    out.push_back({"recurrent cell", GradCheck(vars, loss, rng, kGradCoordinates)});
  }
  {
    EncoderStack stack(3, 4, 2, rng);
    Tensor x = LeafInput({17, 3}, rng, "encoder.input");
    EncoderCarry carry = stack.ZeroCarry();
    for (auto& s : carry.forward) {
      s.h = LeafInput({1, 2}, rng, "encoder.h0");
      s.c = LeafInput({1, 2}, rng, "encoder.c0");
    }
    ParameterList params;
    stack.CollectParameters(params);
    auto vars = Collect(params);
    vars.push_back(x);
    for (auto& s : carry.forward) vars.insert(vars.end(), {s.h, s.c});
    auto loss = [&] {
      EncoderOutput enc = stack.Encode(x, &carry, 8);
      Tensor total = Probe(enc.states, 4);
      for (const auto& s : enc.carry.forward) total = Add(total, Add(Probe(s.h, 5), Probe(s.c, 6)));
      return total;
    };
    out.push_back({"bidirectional stack", GradCheck(vars, loss, rng, kGradCoordinates)});
  }
  for (ScorerKind kind : {ScorerKind::kDot, ScorerKind::kBilinear, ScorerKind::kMlp}) {
    AttentionScorer scorer(kind, 6, 6, 4, rng);
    Tensor states = LeafInput({8, 6}, rng, "attention.states");
    Tensor query = LeafInput({1, 6}, rng, "attention.query");
    ParameterList params;
    scorer.CollectParameters(params);
    auto vars = Collect(params);
    vars.insert(vars.end(), {states, query});
    auto loss = [&] {
      AttentionResult r = scorer.Attend(scorer.Prepare(states), query);
      return Add(Probe(r.context, 7), Probe(r.weights, 8));
    };
    out.push_back({ToString(kind) + " attention", GradCheck(vars, loss, rng, kGradCoordinates)});
  }
  {
    Embedding table(12, 5, rng, "embedding");
    const TokenId ids[] = {3, 7, 3, 11, 0, 7, 5, 1, 9, 2, 4, 6, 8, 10};
    ParameterList params;
    table.CollectParameters(params);
    out.push_back({"embedding", GradCheck(Collect(params),
                                          [&] { return Probe(table.Lookup(ids), 9); }, rng,
                                          kGradCoordinates)});
  }
  {
    Tensor logits = LeafInput({7, 9}, rng, "loss.logits");
    const TokenId targets[] = {0, 8, 3, 3, 5, 1, 7};
    out.push_back({"cross-entropy loss",
                   GradCheck({logits}, [&] { return CrossEntropyLoss(Softmax(logits), targets); },
                             rng, kGradCoordinates)});
  }
  {
    AttentionScorer scorer(ScorerKind::kMlp, 4, 3, 3, rng);
    DecoderCell cell(8, 3, 3, 4, rng);
    Tensor states = LeafInput({5, 4}, rng, "decoder.states");
    ParameterList params;
    scorer.CollectParameters(params);
    cell.CollectParameters(params);
    auto vars = Collect(params);
    vars.push_back(states);
    auto loss = [&] {
      AttentionKeys keys = scorer.Prepare(states);
      DecoderState state = cell.InitialState();
      Tensor total = Tensor::Scalar(0.0);
      const TokenId inputs[] = {1, 6, 2};
      for (TokenId id : inputs) {
        DecoderStepResult r = cell.Step(scorer, keys, id, state);
        const TokenId target[] = {static_cast<TokenId>((id + 3) % 8)};
        total = Add(total, CrossEntropyLoss(r.distribution, target));
        state = r.state;
      }
      return total;
    };
    out.push_back({"decoder step", GradCheck(vars, loss, rng, kGradCoordinates)});
  }
  return out;
}

}  // namespace atisr::testing

#endif  // ATISR_TESTS_SUPPORT_GRADIENT_SUITE_H_
