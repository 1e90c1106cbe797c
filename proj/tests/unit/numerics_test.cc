// tests/unit/numerics_test.cc

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
#include <limits>
#include <vector>

#include "doctest.h"

#include "atisr/error.h"
#include "atisr/numerics/ops.h"
#include "atisr/numerics/optim.h"
#include "atisr/numerics/random.h"
#include "atisr/numerics/tensor.h"
#include "support/oracles.h"

namespace atisr {
namespace {

using testing::GradCheck;
using testing::RandomProjection;
using testing::RandomTensor;

std::vector<double> Values(const Tensor& t) { return {t.data().begin(), t.data().end()}; }

Tensor Param(Tensor t, const char* name) {
  t.set_requires_grad(true);
  t.set_name(name);
  return t;
}

TEST_CASE("matmul identity and dot examples") {
  Tensor eye = Tensor::FromData({2, 2}, {1, 0, 0, 1});
  Tensor col = Tensor::FromData({2, 1}, {3, 4});
  CHECK(Values(MatMul(eye, col)) == std::vector<double>{3, 4});
  Tensor row = Tensor::FromData({1, 2}, {1, 2});
  CHECK(Values(MatMul(row, col)) == std::vector<double>{11});
}

TEST_CASE("matmul agrees with the triple-loop product") {
  Rng rng(7);
  Tensor a = RandomTensor({3, 4}, rng);
  Tensor b = RandomTensor({4, 2}, rng);
  Tensor c = MatMul(a, b);
  auto expect = testing::NaiveMatMul(Values(a), Values(b), 3, 4, 2);
  REQUIRE(c.shape() == Shape{3, 2});
  for (std::size_t i = 0; i < expect.size(); ++i) CHECK(c.data()[i] == doctest::Approx(expect[i]).epsilon(1e-14));
}

TEST_CASE("matmul rejects mismatched inner dimensions") {
  CHECK_THROWS_AS(MatMul(Tensor::Zeros({2, 3}), Tensor::Zeros({2, 3})), DimensionError);
}

TEST_CASE("softmax examples") {
  auto u = Softmax(Tensor::FromData({3}, {0, 0, 0}));
  for (double v : u.data()) CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  for (double c : {-50.0, 0.0, 3.5, 700.0}) {
    auto s = Softmax(Tensor::FromData({2}, {c, c + std::log(2.0)}));
    CHECK(std::abs(s.data()[0] - 1.0 / 3.0) < 1e-12);
    CHECK(std::abs(s.data()[1] - 2.0 / 3.0) < 1e-12);
  }
  CHECK_THROWS_AS(Softmax(Tensor::Zeros({1, 0})), DimensionError);
}

TEST_CASE("softmax matches exp/sum and is shift invariant") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Tensor v = RandomTensor({5}, rng, 4.0);
    auto s = Softmax(v);
    double z = 0.0;
    for (double x : v.data()) z += std::exp(x);
    double total = 0.0;
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(std::abs(s.data()[i] - std::exp(v.data()[i]) / z) < 1e-12);
      CHECK(s.data()[i] > 0.0);
      total += s.data()[i];
    }
    CHECK(std::abs(total - 1.0) < 1e-9);
    const double shift = rng.Uniform(-100, 100);
    std::vector<double> moved = Values(v);
    for (double& x : moved) x += shift;
    auto t = Softmax(Tensor::FromData({5}, moved));
    std::size_t am = 0, bm = 0;
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(std::abs(t.data()[i] - s.data()[i]) < 1e-9);
      if (s.data()[i] > s.data()[am]) am = i;
      if (t.data()[i] > t.data()[bm]) bm = i;
    }
    CHECK(am == bm);
  }
}

TEST_CASE("backward of sum and dot") {
  Tensor x = Param(Tensor::FromData({2, 3}, {1, 2, 3, 4, 5, 6}), "x");
  GradTape tape;
  Tensor loss;
  {
    TapeScope scope(tape);
    loss = Sum(x);
  }
  CHECK(tape.Backward(loss).Of(x) == std::vector<double>(6, 1.0));

  Tensor y = Param(Tensor::FromData({2}, {1, 2}), "y");
  GradTape tape2;
  {
    TapeScope scope(tape2);
    loss = Dot(y, y);
  }
  CHECK(tape2.Backward(loss).Of(y) == std::vector<double>{2, 4});
}

TEST_CASE("backward rejects a non-scalar seed") {
  Tensor x = Param(Tensor::FromData({2}, {1, 2}), "x");
  GradTape tape;
  Tensor out;
  {
    TapeScope scope(tape);
    out = Scale(x, 2.0);
  }
  CHECK_THROWS_AS(tape.Backward(out), UsageError);
}

TEST_CASE("replaying a tape gives identical gradients") {
  Rng rng(3);
  Tensor w = Param(RandomTensor({3, 3}, rng), "w");
  Tensor x = RandomTensor({2, 3}, rng);
  GradTape tape;
  Tensor loss;
  {
    TapeScope scope(tape);
    loss = Sum(Tanh(MatMul(x, w)));
  }
  auto first = tape.Backward(loss).Of(w);
  auto second = tape.Backward(loss).Of(w);
  CHECK(first == second);
}

TEST_CASE("two-layer tanh network passes the finite-difference check") {
  Rng rng(5);
  Tensor w1 = Param(RandomTensor({3, 2}, rng), "w1");
  Tensor b1 = Param(RandomTensor({1, 2}, rng), "b1");
  Tensor w2 = Param(RandomTensor({2, 1}, rng), "w2");
  Tensor x = RandomTensor({4, 3}, rng);
  auto loss = [&] { return Sum(Tanh(MatMul(Tanh(AddRow(MatMul(x, w1), b1)), w2))); };
  auto r = GradCheck({w1, b1, w2}, loss, rng);
  CHECK(r.checked == 10);
  CHECK_MESSAGE(r.max_relative_error < 1e-6, r.worst);
}

TEST_CASE("every primitive passes the finite-difference check") {
  Rng rng(17);
  Tensor a = Param(RandomTensor({4, 5}, rng), "a");
  Tensor b = Param(RandomTensor({4, 5}, rng), "b");
  Tensor m = Param(RandomTensor({5, 3}, rng), "m");
  Tensor row = Param(RandomTensor({1, 5}, rng), "row");
  const std::size_t idx[] = {3, 0, 3};
  auto loss = [&] {
    Tensor h = Add(Mul(Sigmoid(a), Tanh(b)), Sub(a, Scale(b, 0.5)));
    h = AddRow(h, row);
    Tensor s = Softmax(MatMul(h, m));
    Tensor parts[] = {SliceRows(s, 1, 2), GatherRows(s, idx)};
    Tensor cat = ConcatCols(ConcatRows(parts), Transpose(SliceCols(h, 1, 5)));
    return Dot(cat, RandomProjection(cat, 99));
  };
  auto r = GradCheck({a, b, m, row}, loss, rng, 80);
  CHECK(r.checked == 60);
  CHECK_MESSAGE(r.max_relative_error < 1e-6, r.worst);
}

TEST_CASE("recurrent scan passes the finite-difference check in both directions") {
  Rng rng(23);
  const std::size_t T = 5, H = 3;
  Tensor gates = Param(RandomTensor({T, 4 * H}, rng), "gates");
  Tensor u = Param(RandomTensor({H, 4 * H}, rng, 0.5), "u");
  Tensor h0 = Param(RandomTensor({1, H}, rng), "h0");
  Tensor c0 = Param(RandomTensor({1, H}, rng), "c0");
  for (bool reverse : {false, true}) {
    auto loss = [&] {
      Tensor out = LstmScan(gates, u, h0, c0, reverse);
      return Dot(out, RandomProjection(out, 5));
    };
    auto r = GradCheck({gates, u, h0, c0}, loss, rng, 70);
    CHECK(r.checked == 70);
    CHECK_MESSAGE(r.max_relative_error < 1e-6, r.worst);
  }
}

TEST_CASE("adam leaves parameters unchanged on zero gradients") {
  Tensor p = Param(Tensor::FromData({2}, {1.5, -2.0}), "p");
  ParameterList params = {{"p", p}};
  AdamState state;
  AdamHyper hyper;
  AdamStep(params, {{0.5, -0.5}}, state, hyper);
  const auto m_before = state.first_moment[0];
  const auto v_before = state.second_moment[0];
  AdamStep(params, {{0.0, 0.0}}, state, hyper);
  CHECK(state.first_moment[0][0] == doctest::Approx(0.9 * m_before[0]));
  CHECK(state.second_moment[0][0] == doctest::Approx(0.999 * v_before[0]));

  Tensor q = Param(Tensor::FromData({2}, {1.5, -2.0}), "q");
  ParameterList fresh = {{"q", q}};
  AdamState clean;
  AdamStep(fresh, {{0.0, 0.0}}, clean, hyper);
  CHECK(Values(q) == std::vector<double>{1.5, -2.0});
  CHECK(clean.first_moment[0] == std::vector<double>{0.0, 0.0});
}

TEST_CASE("adam single scalar step") {
  Tensor p = Param(Tensor::FromData({1}, {2.0}), "p");
  ParameterList params = {{"p", p}};
  AdamState state;
  AdamHyper hyper{0.1, 0.9, 0.999, 1e-8};
  AdamStep(params, {{1.0}}, state, hyper);
  // m_hat = 1, v_hat = 1: the step is lr / (1 + eps).
  CHECK(p.data()[0] == doctest::Approx(2.0 - 0.1 / (1.0 + 1e-8)).epsilon(1e-14));
}

TEST_CASE("adam is deterministic and names a non-finite gradient") {
  auto run = [] {
    Rng rng(9);
    Tensor p = Param(RandomTensor({3}, rng), "p");
    ParameterList params = {{"p", p}};
    AdamState state;
    for (int i = 0; i < 5; ++i) AdamStep(params, {{0.1 * i, -0.2, 0.3}}, state, AdamHyper{});
    return Values(p);
  };
  CHECK(run() == run());

  Tensor p = Param(Tensor::FromData({2}, {1, 2}), "encoder.weight");
  ParameterList params = {{"encoder.weight", p}};
  AdamState state;
  try {
    AdamStep(params, {{1.0, std::numeric_limits<double>::quiet_NaN()}}, state, AdamHyper{});
    FAIL("expected OptimizerError");
  } catch (const OptimizerError& e) {
    CHECK(std::string(e.what()).find("encoder.weight") != std::string::npos);
  }
  CHECK(Values(p) == std::vector<double>{1, 2});
}

TEST_CASE("global-norm clipping") {
  GradientList g = {{3.0}, {4.0}};
  CHECK(ClipGlobalNorm(g, 5.0) == doctest::Approx(5.0));
  CHECK(g[0][0] == doctest::Approx(3.0));
  CHECK(ClipGlobalNorm(g, 1.0) == doctest::Approx(5.0));
  CHECK(GlobalNorm(g) == doctest::Approx(1.0));
}

TEST_CASE("derived random streams are reproducible and distinct") {
  Rng a = Rng::Derive(1, "init"), b = Rng::Derive(1, "init"), c = Rng::Derive(1, "shuffle");
  const auto x = a.NextU64();
  CHECK(x == b.NextU64());
  CHECK(x != c.NextU64());
  Rng r(4);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.Uniform();
    CHECK((u >= 0.0 && u < 1.0));
    const auto k = r.UniformInt(-3, 3);
    CHECK((k >= -3 && k <= 3));
  }
}

}  // namespace
}  // namespace atisr
