// benchmarks/atisr_benchmarks.cc

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


// Micro benchmarks of the hot paths: dense products, the recurrent scan,
// alignment extraction and greedy decoding.

#include <benchmark/benchmark.h>

#include "atisr/corpus/synthetic.h"
#include "atisr/distill/alignment.h"
#include "atisr/isr/decode.h"
#include "atisr/numerics/ops.h"
#include "atisr/numerics/random.h"
#include "atisr/pipeline/experiment.h"
#include "atisr/seq2seq/teacher.h"

namespace {

atisr::Tensor Random(const atisr::Shape& shape, atisr::Rng& rng) {
  std::vector<double> v(atisr::ShapeSize(shape));
  for (double& x : v) x = rng.Uniform(-1.0, 1.0);
  return atisr::Tensor::FromData(shape, std::move(v));
}

void BM_MatMul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  atisr::Rng rng(1);
  auto a = Random({n, n}, rng);
  auto b = Random({n, n}, rng);
  for (auto _ : state) benchmark::DoNotOptimize(atisr::MatMul(a, b));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MatMul)->RangeMultiplier(2)->Range(16, 256);

void BM_LstmScan(benchmark::State& state) {
  const auto steps = static_cast<std::size_t>(state.range(0));
  const std::size_t hidden = 64;
  atisr::Rng rng(2);
  auto gates = Random({steps, 4 * hidden}, rng);
  auto recurrent = Random({hidden, 4 * hidden}, rng);
  auto zero = atisr::Tensor::Zeros({1, hidden});
  for (auto _ : state) {
    benchmark::DoNotOptimize(atisr::LstmScan(gates, recurrent, zero, zero, false));
  }
}
BENCHMARK(BM_LstmScan)->Arg(50)->Arg(400);

void BM_LstmScanBackward(benchmark::State& state) {
  const std::size_t steps = 200, hidden = 64;
  atisr::Rng rng(3);
  auto gates = Random({steps, 4 * hidden}, rng);
  auto recurrent = Random({hidden, 4 * hidden}, rng);
  recurrent.set_requires_grad(true);
  auto zero = atisr::Tensor::Zeros({1, hidden});
  for (auto _ : state) {
    atisr::GradTape tape;
    atisr::Tensor loss;
    {
      atisr::TapeScope scope(tape);
      loss = atisr::Sum(atisr::LstmScan(gates, recurrent, zero, zero, true));
    }
    benchmark::DoNotOptimize(tape.Backward(loss));
  }
}
BENCHMARK(BM_LstmScanBackward);

void BM_MonotonicAlignment(benchmark::State& state) {
  const auto rows = static_cast<std::size_t>(state.range(0));
  const std::size_t cols = rows / 4 + 1;
  atisr::Rng rng(4);
  atisr::AttentionMatrix m;
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<double> row(cols);
    double sum = 0.0;
    for (double& x : row) sum += x = rng.Uniform(0.0, 1.0);
    for (double& x : row) x /= sum;
    m.AppendRow(row);
  }
  for (auto _ : state) benchmark::DoNotOptimize(atisr::ExtractMonotonicAlignment(m));
}
BENCHMARK(BM_MonotonicAlignment)->Arg(60)->Arg(240);

struct DecodeFixture {
  atisr::SyntheticCorpus corpus;
  atisr::Seq2SeqModel model;
  DecodeFixture() {
    atisr::SyntheticSpec spec;
    spec.train_size = 1;
    spec.dev_size = 1;
    spec.test_size = 1;
    corpus = atisr::GenerateSynthetic(spec);
    model = atisr::Seq2SeqModel(atisr::SyntheticArch(), corpus.vocabulary, 5);
  }
};

void BM_GreedyDecode(benchmark::State& state) {
  static const DecodeFixture f;
  const auto& u = f.corpus.test.utterances[0];
  for (auto _ : state) benchmark::DoNotOptimize(atisr::GreedyDecode(f.model, u.features, 60));
}
BENCHMARK(BM_GreedyDecode)->Unit(benchmark::kMillisecond);

void BM_IsrDecode(benchmark::State& state) {
  static const DecodeFixture f;
  const auto& u = f.corpus.test.utterances[0];
  atisr::IsrConfig cfg;
  cfg.look_ahead = static_cast<std::size_t>(state.range(0));
  cfg.max_step_outputs = 4;
  for (auto _ : state) benchmark::DoNotOptimize(atisr::IsrDecode(f.model, u.features, cfg));
}
BENCHMARK(BM_IsrDecode)->Arg(0)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
