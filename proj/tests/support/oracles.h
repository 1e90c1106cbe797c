// tests/support/oracles.h

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

// Independent reference implementations used by the unit and acceptance
// tests. None of them calls into the library code under test beyond the
// tensor container.

#ifndef ATISR_TESTS_SUPPORT_ORACLES_H_
#define ATISR_TESTS_SUPPORT_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "atisr/numerics/random.h"
#include "atisr/numerics/tensor.h"

namespace atisr::testing {

/// Triple-loop matrix product.
inline std::vector<double> NaiveMatMul(const std::vector<double>& a, const std::vector<double>& b,
                                       std::size_t m, std::size_t k, std::size_t n) {
  std::vector<double> out(m * n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t p = 0; p < k; ++p) s += a[i * k + p] * b[p * n + j];
      out[i * n + j] = s;
    }
  }
  return out;
}

inline Tensor RandomTensor(const Shape& shape, Rng& rng, double scale = 1.0) {
  std::vector<double> v(ShapeSize(shape));
  for (double& x : v) x = rng.Uniform(-scale, scale);
  return Tensor::FromData(shape, std::move(v));
}

inline std::vector<double> RandomRowStochastic(std::size_t rows, std::size_t cols, Rng& rng) {
  std::vector<double> v(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    double sum = 0.0;
    for (std::size_t c = 0; c < cols; ++c) sum += v[r * cols + c] = std::exp(rng.Normal());
    for (std::size_t c = 0; c < cols; ++c) v[r * cols + c] /= sum;
  }
  return v;
}

/// Unit-cost edit distance by the textbook full-table recurrence.
template <typename Seq>
std::size_t LevenshteinOracle(const Seq& a, const Seq& b) {
  std::vector<std::vector<std::size_t>> d(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) d[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) d[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1,
                          d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0u : 1u)});
    }
  }
  return d[a.size()][b.size()];
}

struct BruteAlignment {
  std::vector<std::size_t> assignment;
  double score = 0.0;
};

/// Enumerates every non-decreasing assignment in lexicographic order and
/// keeps the first one with the highest score (row-order summation).
inline BruteAlignment BruteForceAlignment(const std::vector<double>& a, std::size_t rows,
                                          std::size_t cols) {
  BruteAlignment best;
  bool have = false;
  std::vector<std::size_t> path(rows, 0);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t t, std::size_t lo) {
    if (t == rows) {
      double s = 0.0;
      for (std::size_t i = 0; i < rows; ++i) s += a[i * cols + path[i]];
      if (!have || s > best.score) {
        best.score = s;
        best.assignment = path;
        have = true;
      }
      return;
    }
    for (std::size_t s = lo; s < cols; ++s) {
      path[t] = s;
      rec(t + 1, s);
    }
  };
  rec(0, 0);
  return best;
}

struct GradCheckResult {
  std::size_t checked = 0;
  double max_relative_error = 0.0;
  std::string worst;
};

/// Gradients below this magnitude are compared on an absolute scale of
/// kGradFloor * relative tolerance.
inline constexpr double kGradFloor = 1e-4;

/// Compares tape gradients of `loss()` with respect to `params` against
/// central differences with step `h` on `coords` random coordinates (all
/// coordinates when there are fewer).
inline GradCheckResult GradCheck(const std::vector<Tensor>& params,
                                 const std::function<Tensor()>& loss, Rng& rng,
                                 std::size_t coords = 60, double h = 1e-5) {
  GradTape tape;
  Tensor out;
  {
    TapeScope scope(tape);
    out = loss();
  }
  Gradients grads = tape.Backward(out);
  std::vector<std::vector<double>> analytic;
  for (const auto& p : params) {
    analytic.push_back(grads.Of(p));
  }
  std::vector<std::pair<std::size_t, std::size_t>> picks;
  for (std::size_t i = 0; i < params.size(); ++i) {
    for (std::size_t j = 0; j < params[i].size(); ++j) picks.emplace_back(i, j);
  }
  rng.Shuffle(picks);
  if (picks.size() > coords) picks.resize(coords);

  GradCheckResult result;
  for (auto [i, j] : picks) {
    double* x = &params[i].node()->data[j];
    const double saved = *x;
    *x = saved + h;
    const double up = loss().item();
    *x = saved - h;
    const double down = loss().item();
    *x = saved;
    const double numeric = (up - down) / (2.0 * h);
    const double a = analytic[i][j];
    const double rel =
        std::abs(a - numeric) / std::max({std::abs(a), std::abs(numeric), kGradFloor});
    ++result.checked;
    if (rel > result.max_relative_error) {
      result.max_relative_error = rel;
      result.worst = params[i].name() + "[" + std::to_string(j) + "] analytic " +
                     std::to_string(a) + " numeric " + std::to_string(numeric);
    }
  }
  return result;
}

/// Projects `t` onto fixed random weights so every output element reaches
/// the loss with a distinct coefficient.
inline Tensor RandomProjection(const Tensor& t, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> w(t.size());
  for (double& v : w) v = rng.Uniform(-1.0, 1.0);
  return Tensor::FromData(t.shape(), std::move(w));
}

}  // namespace atisr::testing

#endif  // ATISR_TESTS_SUPPORT_ORACLES_H_
