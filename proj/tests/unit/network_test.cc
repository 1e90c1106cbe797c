// tests/unit/network_test.cc

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


#include <cmath>
#include <vector>

#include "doctest.h"

#include "atisr/error.h"
#include "atisr/network/attention.h"
#include "atisr/network/decoder.h"
#include "atisr/network/encoder.h"
#include "atisr/numerics/ops.h"
#include "support/oracles.h"

namespace atisr {
namespace {

using testing::RandomTensor;

Tensor Row(std::vector<double> v) {
  const std::size_t n = v.size();
  return Tensor::FromData({1, n}, std::move(v));
}

const Tensor& ParamNamed(const ParameterList& params, const std::string& suffix) {
  for (const auto& p : params) {
    if (p.name.size() >= suffix.size() &&
        p.name.compare(p.name.size() - suffix.size(), suffix.size(), suffix) == 0) {
      return p.tensor;
    }
  }
  FAIL("no parameter named *" << suffix);
  return params.front().tensor;
}

TEST_CASE("dot scorer") {
  Rng rng(1);
  AttentionScorer dot(ScorerKind::kDot, 2, 2, 0, rng);
  CHECK(dot.Score(Row({1, 0}), Row({0, 1})).item() == 0.0);
  CHECK(dot.Score(Row({1, 2}), Row({3, 4})).item() == 11.0);
  CHECK_THROWS_AS(AttentionScorer(ScorerKind::kDot, 3, 2, 0, rng), ConfigurationError);
}

TEST_CASE("bilinear scorer with an identity weight reduces to the dot scorer") {
  Rng rng(2);
  AttentionScorer bilinear(ScorerKind::kBilinear, 4, 4, 0, rng);
  AttentionScorer dot(ScorerKind::kDot, 4, 4, 0, rng);
  auto w = bilinear.weight().mutable_data();
  for (std::size_t i = 0; i < 16; ++i) w[i] = (i % 5 == 0) ? 1.0 : 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    Tensor e = RandomTensor({1, 4}, rng), d = RandomTensor({1, 4}, rng);
    CHECK(std::abs(bilinear.Score(e, d).item() - dot.Score(e, d).item()) < 1e-12);
    Tensor states = RandomTensor({5, 4}, rng);
    auto a = AttentionContext(bilinear, states, d), b = AttentionContext(dot, states, d);
    for (std::size_t s = 0; s < 5; ++s) CHECK(std::abs(a.weights.data()[s] - b.weights.data()[s]) < 1e-12);
  }
}

TEST_CASE("mlp scorer matches the formula evaluated by hand") {
  Rng rng(3);
  const std::size_t m = 3, n = 2, a = 4;
  AttentionScorer mlp(ScorerKind::kMlp, m, n, a, rng);
  const auto w = mlp.weight().data();  // (m + n) x a
  const auto v = mlp.vector().data();  // a x 1
  for (int trial = 0; trial < 10; ++trial) {
    Tensor e = RandomTensor({1, m}, rng), d = RandomTensor({1, n}, rng);
    std::vector<double> in(e.data().begin(), e.data().end());
    in.insert(in.end(), d.data().begin(), d.data().end());
    double expect = 0.0;
    for (std::size_t j = 0; j < a; ++j) {
      double z = 0.0;
      for (std::size_t i = 0; i < m + n; ++i) z += in[i] * w[i * a + j];
      expect += v[j] * std::tanh(z);
    }
    CHECK(std::abs(mlp.Score(e, d).item() - expect) < 1e-12);
  }
}

TEST_CASE("attention context examples") {
  Rng rng(4);
  AttentionScorer dot(ScorerKind::kDot, 2, 2, 0, rng);
  auto single = AttentionContext(dot, Row({0.3, -0.7}), Row({1, 1}));
  CHECK(single.weights.data()[0] == 1.0);
  CHECK(single.context.data()[0] == doctest::Approx(0.3));
  CHECK(single.context.data()[1] == doctest::Approx(-0.7));

  Tensor states = Tensor::FromData({4, 2}, {1, 2, 3, 4, 5, 6, 7, 8});
  auto uniform = AttentionContext(dot, states, Row({0, 0}));
  CHECK(std::abs(uniform.context.data()[0] - 4.0) < 1e-12);
  CHECK(std::abs(uniform.context.data()[1] - 5.0) < 1e-12);

  CHECK_THROWS_AS(AttentionContext(dot, Tensor::Zeros({0, 2}), Row({0, 0})), DimensionError);
}

TEST_CASE("attention weights and context agree with a direct weighted sum") {
  Rng rng(5);
  for (ScorerKind kind : {ScorerKind::kDot, ScorerKind::kBilinear, ScorerKind::kMlp}) {
    AttentionScorer scorer(kind, 2, 2, 3, rng);
    for (int trial = 0; trial < 20; ++trial) {
      Tensor states = RandomTensor({3, 2}, rng, 2.0);
      Tensor d = RandomTensor({1, 2}, rng, 2.0);
      auto r = AttentionContext(scorer, states, d);
      std::vector<double> scores(3);
      double z = 0.0;
      for (std::size_t s = 0; s < 3; ++s) {
        scores[s] = scorer.Score(SliceRows(states, s, s + 1), d).item();
      }
      const double mx = *std::max_element(scores.begin(), scores.end());
      for (double& x : scores) z += x = std::exp(x - mx);
      double sum = 0.0;
      for (std::size_t s = 0; s < 3; ++s) {
        const double w = scores[s] / z;
        CHECK(r.weights.data()[s] >= 0.0);
        CHECK(std::abs(r.weights.data()[s] - w) < 1e-12);
        sum += r.weights.data()[s];
      }
      CHECK(std::abs(sum - 1.0) < 1e-9);
      for (std::size_t c = 0; c < 2; ++c) {
        double expect = 0.0;
        for (std::size_t s = 0; s < 3; ++s) expect += scores[s] / z * states.at(s, c);
        CHECK(std::abs(r.context.data()[c] - expect) < 1e-12);
      }
    }
  }
}

TEST_CASE("cross-entropy examples") {
  const TokenId targets[] = {2, 0, 3};
  Tensor onehot = Tensor::FromData({3, 4}, {0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1});
  CHECK(CrossEntropyLoss(onehot, targets).item() <= 1e-9);
  Tensor uniform = Tensor::Full({3, 4}, 0.25);
  CHECK(std::abs(CrossEntropyLoss(uniform, targets).item() - std::log(4.0)) < 1e-12);

  Rng rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    auto p = testing::RandomRowStochastic(3, 4, rng);
    double expect = 0.0;
    for (std::size_t t = 0; t < 3; ++t) {
      for (std::size_t c = 0; c < 4; ++c) {
        if (static_cast<TokenId>(c) == targets[t]) expect -= std::log(p[t * 4 + c]);
      }
    }
    const double got = CrossEntropyLoss(Tensor::FromData({3, 4}, p), targets).item();
    CHECK(got >= 0.0);
    CHECK(std::abs(got - expect / 3.0) < 1e-12);
  }
  const TokenId bad[] = {2, 4, 0};
  CHECK_THROWS_WITH_AS(CrossEntropyLoss(uniform, bad), doctest::Contains("position 1"), DataError);
}

TEST_CASE("encoder length is ceil(S / 8)") {
  Rng rng(7);
  EncoderStack stack(3, 4, 2, rng);
  for (std::size_t s = 1; s <= 64; ++s) {
    EncoderOutput out = stack.Encode(RandomTensor({s, 3}, rng));
    CAPTURE(s);
    CHECK(out.states.rows() == (s + 7) / 8);
    CHECK(out.states.cols() == 4);
  }
  CHECK(stack.Encode(Tensor::Zeros({8, 3})).states.rows() == 1);
  CHECK(stack.Encode(Tensor::Zeros({16, 3})).states.rows() == 2);
  CHECK_THROWS_AS(stack.Encode(Tensor::Zeros({8, 5})), ConfigurationError);
}

TEST_CASE("zero carry equals no carry") {
  Rng rng(8);
  EncoderStack stack(3, 4, 2, rng);
  Tensor x = RandomTensor({32, 3}, rng);
  EncoderCarry zero = stack.ZeroCarry();
  auto a = stack.Encode(x);
  auto b = stack.Encode(x, &zero);
  CHECK(std::vector<double>(a.states.data().begin(), a.states.data().end()) ==
        std::vector<double>(b.states.data().begin(), b.states.data().end()));

  auto carried = stack.Encode(x, &a.carry);
  CHECK(std::vector<double>(carried.states.data().begin(), carried.states.data().end()) !=
        std::vector<double>(a.states.data().begin(), a.states.data().end()));
  CHECK_THROWS(stack.Encode(x, nullptr, 12));
}

TEST_CASE("decode step is a pure function and exposes the attention weights") {
  Rng rng(9);
  AttentionScorer scorer(ScorerKind::kMlp, 4, 3, 5, rng);
  DecoderCell cell(9, 3, 3, 4, rng);
  Tensor states = RandomTensor({6, 4}, rng);
  DecoderState state = cell.InitialState();
  for (TokenId prev : {1, 7, 3}) {
    auto r1 = DecodeStep(cell, scorer, prev, state, states);
    auto r2 = DecodeStep(cell, scorer, prev, state, states);
    double sum = 0.0;
    for (double p : r1.distribution.data()) sum += p;
    CHECK(std::abs(sum - 1.0) < 1e-9);
    CHECK(std::vector<double>(r1.distribution.data().begin(), r1.distribution.data().end()) ==
          std::vector<double>(r2.distribution.data().begin(), r2.distribution.data().end()));
    auto direct = AttentionContext(scorer, states, r1.state.h);
    for (std::size_t s = 0; s < 6; ++s) CHECK(direct.weights.data()[s] == r1.weights.data()[s]);
    state = r1.state;
  }
  CHECK_THROWS_AS(DecodeStep(cell, scorer, 9, state, states), DataError);
}

TEST_CASE("initialization follows the documented ranges") {
  Rng rng(10);
  Lstm lstm(5, 4, rng, "cell");
  ParameterList params;
  lstm.CollectParameters(params);
  const auto bias = ParamNamed(params, "bias").data();
  for (std::size_t i = 0; i < 16; ++i) CHECK(bias[i] == ((i >= 4 && i < 8) ? 1.0 : 0.0));
  const Tensor& w = ParamNamed(params, "input_weight");
  const double limit = std::sqrt(6.0 / (5.0 + 16.0));
  for (double v : w.data()) CHECK(std::abs(v) <= limit);
}

TEST_CASE("argmax ties resolve to the lowest index") {
  CHECK(ArgMax(Row({0.2, 0.4, 0.4})) == 1);
  CHECK(ArgMax(Row({0.5, 0.5})) == 0);
}

}  // namespace
}  // namespace atisr
