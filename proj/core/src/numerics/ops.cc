// numerics/ops.cc

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

#include "atisr/numerics/ops.h"

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "atisr/error.h"

namespace atisr {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatrixMap = Eigen::Map<RowMatrix>;
using ConstMatrixMap = Eigen::Map<const RowMatrix>;

ConstMatrixMap View(const Tensor& t) {
  return ConstMatrixMap(t.data().data(), static_cast<Eigen::Index>(t.rows()),
                        static_cast<Eigen::Index>(t.cols()));
}

ConstMatrixMap View(std::span<const double> d, std::size_t r, std::size_t c) {
  return ConstMatrixMap(d.data(), static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
}

MatrixMap View(std::span<double> d, std::size_t r, std::size_t c) {
  return MatrixMap(d.data(), static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
}

Tensor Matrix(std::size_t r, std::size_t c) { return Tensor::Zeros({r, c}); }

void RequireSameShape(const Tensor& a, const Tensor& b, const char* op) {
  if (a.shape() != b.shape()) {
    throw DimensionError(std::string(op) + ": shape mismatch " + ShapeString(a.shape()) +
                         " vs " + ShapeString(b.shape()));
  }
}

inline double SigmoidValue(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

Tensor MatMul(const Tensor& a, const Tensor& b) {
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  if (b.rows() != k) {
    throw DimensionError("matmul: inner dimensions differ, " + ShapeString(a.shape()) + " x " +
                         ShapeString(b.shape()));
  }
  Tensor out = Matrix(m, n);
  View(out.mutable_data(), m, n).noalias() = View(a) * View(b);
  if (ShouldRecord({&a, &b})) {
    GradTape::Active()->Record(out, [a, b, m, k, n](GradTape& tape, std::span<const double> g) {
      auto dc = View(g, m, n);
      if (a.requires_grad()) View(tape.GradOf(a), m, k).noalias() += dc * View(b).transpose();
      if (b.requires_grad()) View(tape.GradOf(b), k, n).noalias() += View(a).transpose() * dc;
    });
  }
  return out;
}

Tensor Transpose(const Tensor& a) {
  const std::size_t r = a.rows(), c = a.cols();
  Tensor out = Matrix(c, r);
  View(out.mutable_data(), c, r) = View(a).transpose();
  if (ShouldRecord({&a})) {
    GradTape::Active()->Record(out, [a, r, c](GradTape& tape, std::span<const double> g) {
      View(tape.GradOf(a), r, c) += View(g, c, r).transpose();
    });
  }
  return out;
}

namespace {

template <typename Fwd, typename BwdA, typename BwdB>
Tensor Elementwise(const Tensor& a, const Tensor& b, const char* name, Fwd fwd, BwdA da,
                   BwdB db) {
  RequireSameShape(a, b, name);
  Tensor out = Tensor::Zeros(a.shape());
  auto o = out.mutable_data();
  auto x = a.data(), y = b.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = fwd(x[i], y[i]);
  if (ShouldRecord({&a, &b})) {
    GradTape::Active()->Record(out, [a, b, da, db](GradTape& tape, std::span<const double> g) {
      auto x = a.data(), y = b.data();
      if (a.requires_grad()) {
        auto ga = tape.GradOf(a);
        for (std::size_t i = 0; i < g.size(); ++i) ga[i] += da(g[i], x[i], y[i]);
      }
      if (b.requires_grad()) {
        auto gb = tape.GradOf(b);
        for (std::size_t i = 0; i < g.size(); ++i) gb[i] += db(g[i], x[i], y[i]);
      }
    });
  }
  return out;
}

}  // namespace

Tensor Add(const Tensor& a, const Tensor& b) {
  return Elementwise(
      a, b, "add", [](double x, double y) { return x + y; },
      [](double g, double, double) { return g; }, [](double g, double, double) { return g; });
}

Tensor Sub(const Tensor& a, const Tensor& b) {
  return Elementwise(
      a, b, "sub", [](double x, double y) { return x - y; },
      [](double g, double, double) { return g; }, [](double g, double, double) { return -g; });
}

Tensor Mul(const Tensor& a, const Tensor& b) {
  return Elementwise(
      a, b, "mul", [](double x, double y) { return x * y; },
      [](double g, double, double y) { return g * y; },
      [](double g, double x, double) { return g * x; });
}

Tensor Scale(const Tensor& a, double factor) {
  Tensor out = Tensor::Zeros(a.shape());
  auto o = out.mutable_data();
  auto x = a.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = x[i] * factor;
  if (ShouldRecord({&a})) {
    GradTape::Active()->Record(out, [a, factor](GradTape& tape, std::span<const double> g) {
      auto ga = tape.GradOf(a);
      for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * factor;
    });
  }
  return out;
}

Tensor AddRow(const Tensor& a, const Tensor& row) {
  const std::size_t m = a.rows(), n = a.cols();
  if (row.size() != n) {
    throw DimensionError("add_row: row of " + ShapeString(row.shape()) + " cannot broadcast over " +
                         ShapeString(a.shape()));
  }
  Tensor out = Matrix(m, n);
  View(out.mutable_data(), m, n) = View(a).rowwise() + View(row.data(), 1, n).row(0);
  if (ShouldRecord({&a, &row})) {
    GradTape::Active()->Record(out, [a, row, m, n](GradTape& tape, std::span<const double> g) {
      if (a.requires_grad()) View(tape.GradOf(a), m, n) += View(g, m, n);
      if (row.requires_grad()) View(tape.GradOf(row), 1, n) += View(g, m, n).colwise().sum();
    });
  }
  return out;
}

Tensor Tanh(const Tensor& a) {
  Tensor out = Tensor::Zeros(a.shape());
  auto o = out.mutable_data();
  auto x = a.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = std::tanh(x[i]);
  if (ShouldRecord({&a})) {
    GradTape::Active()->Record(out, [a, out](GradTape& tape, std::span<const double> g) {
      auto ga = tape.GradOf(a);
      auto y = out.data();
      for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * (1.0 - y[i] * y[i]);
    });
  }
  return out;
}

Tensor Sigmoid(const Tensor& a) {
  Tensor out = Tensor::Zeros(a.shape());
  auto o = out.mutable_data();
  auto x = a.data();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = SigmoidValue(x[i]);
  if (ShouldRecord({&a})) {
    GradTape::Active()->Record(out, [a, out](GradTape& tape, std::span<const double> g) {
      auto ga = tape.GradOf(a);
      auto y = out.data();
      for (std::size_t i = 0; i < g.size(); ++i) ga[i] += g[i] * y[i] * (1.0 - y[i]);
    });
  }
  return out;
}

Tensor Softmax(const Tensor& a) {
  if (a.size() == 0) throw DimensionError("softmax: empty input");
  const std::size_t m = a.rows(), n = a.cols();
  Tensor out = Tensor::Zeros(a.shape());
  auto o = out.mutable_data();
  auto x = a.data();
  for (std::size_t r = 0; r < m; ++r) {
    const double* xr = x.data() + r * n;
    double* orow = o.data() + r * n;
    double mx = *std::max_element(xr, xr + n);
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      orow[j] = std::exp(xr[j] - mx);
      total += orow[j];
    }
    for (std::size_t j = 0; j < n; ++j) orow[j] /= total;
  }
  if (ShouldRecord({&a})) {
    GradTape::Active()->Record(out, [a, out, m, n](GradTape& tape, std::span<const double> g) {
      auto ga = tape.GradOf(a);
      auto y = out.data();
      for (std::size_t r = 0; r < m; ++r) {
        double inner = 0.0;
        for (std::size_t j = 0; j < n; ++j) inner += g[r * n + j] * y[r * n + j];
        for (std::size_t j = 0; j < n; ++j) {
          ga[r * n + j] += y[r * n + j] * (g[r * n + j] - inner);
        }
      }
    });
  }
  return out;
}

Tensor Sum(const Tensor& a) {
  double total = 0.0;
  for (double v : a.data()) total += v;
  Tensor out = Tensor::Scalar(total);
  if (ShouldRecord({&a})) {
    GradTape::Active()->Record(out, [a](GradTape& tape, std::span<const double> g) {
      for (double& v : tape.GradOf(a)) v += g[0];
    });
  }
  return out;
}

Tensor Dot(const Tensor& a, const Tensor& b) {
  if (a.size() != b.size()) {
    throw DimensionError("dot: sizes differ, " + ShapeString(a.shape()) + " vs " +
                         ShapeString(b.shape()));
  }
  double total = 0.0;
  auto x = a.data(), y = b.data();
  for (std::size_t i = 0; i < x.size(); ++i) total += x[i] * y[i];
  Tensor out = Tensor::Scalar(total);
  if (ShouldRecord({&a, &b})) {
    GradTape::Active()->Record(out, [a, b](GradTape& tape, std::span<const double> g) {
      auto x = a.data(), y = b.data();
      if (a.requires_grad()) {
        auto ga = tape.GradOf(a);
        for (std::size_t i = 0; i < ga.size(); ++i) ga[i] += g[0] * y[i];
      }
      if (b.requires_grad()) {
        auto gb = tape.GradOf(b);
        for (std::size_t i = 0; i < gb.size(); ++i) gb[i] += g[0] * x[i];
      }
    });
  }
  return out;
}

Tensor ConcatCols(const Tensor& a, const Tensor& b) {
  const std::size_t m = a.rows(), na = a.cols(), nb = b.cols();
  if (b.rows() != m) {
    throw DimensionError("concat_cols: row counts differ, " + ShapeString(a.shape()) + " vs " +
                         ShapeString(b.shape()));
  }
  Tensor out = Matrix(m, na + nb);
  auto o = View(out.mutable_data(), m, na + nb);
  o.leftCols(static_cast<Eigen::Index>(na)) = View(a);
  o.rightCols(static_cast<Eigen::Index>(nb)) = View(b);
  if (ShouldRecord({&a, &b})) {
    GradTape::Active()->Record(out, [a, b, m, na, nb](GradTape& tape, std::span<const double> g) {
      auto gv = View(g, m, na + nb);
      if (a.requires_grad()) View(tape.GradOf(a), m, na) += gv.leftCols(static_cast<Eigen::Index>(na));
      if (b.requires_grad()) View(tape.GradOf(b), m, nb) += gv.rightCols(static_cast<Eigen::Index>(nb));
    });
  }
  return out;
}

Tensor ConcatRows(std::span<const Tensor> parts) {
  if (parts.empty()) throw DimensionError("concat_rows: no inputs");
  const std::size_t n = parts.front().cols();
  std::size_t m = 0;
  bool record = false;
  for (const Tensor& p : parts) {
    if (p.cols() != n) {
      throw DimensionError("concat_rows: column counts differ, " + ShapeString(parts.front().shape()) +
                           " vs " + ShapeString(p.shape()));
    }
    m += p.rows();
    record = record || ShouldRecord({&p});
  }
  Tensor out = Matrix(m, n);
  auto o = out.mutable_data();
  std::size_t offset = 0;
  for (const Tensor& p : parts) {
    std::copy(p.data().begin(), p.data().end(), o.begin() + static_cast<std::ptrdiff_t>(offset));
    offset += p.size();
  }
  if (record) {
    std::vector<Tensor> inputs(parts.begin(), parts.end());
    GradTape::Active()->Record(out, [inputs](GradTape& tape, std::span<const double> g) {
      std::size_t offset = 0;
      for (const Tensor& p : inputs) {
        if (p.requires_grad()) {
          auto gp = tape.GradOf(p);
          for (std::size_t i = 0; i < gp.size(); ++i) gp[i] += g[offset + i];
        }
        offset += p.size();
      }
    });
  }
  return out;
}

Tensor SliceRows(const Tensor& a, std::size_t begin, std::size_t end) {
  const std::size_t n = a.cols();
  if (begin >= end || end > a.rows()) {
    throw DimensionError("slice_rows: [" + std::to_string(begin) + ", " + std::to_string(end) +
                         ") out of range for " + ShapeString(a.shape()));
  }
  Tensor out = Matrix(end - begin, n);
  std::copy(a.data().begin() + static_cast<std::ptrdiff_t>(begin * n),
            a.data().begin() + static_cast<std::ptrdiff_t>(end * n), out.mutable_data().begin());
  if (ShouldRecord({&a})) {
    GradTape::Active()->Record(out, [a, begin, n](GradTape& tape, std::span<const double> g) {
      auto ga = tape.GradOf(a);
      for (std::size_t i = 0; i < g.size(); ++i) ga[begin * n + i] += g[i];
    });
  }
  return out;
}

Tensor SliceCols(const Tensor& a, std::size_t begin, std::size_t end) {
  const std::size_t m = a.rows(), n = a.cols();
  if (begin >= end || end > n) {
    throw DimensionError("slice_cols: [" + std::to_string(begin) + ", " + std::to_string(end) +
                         ") out of range for " + ShapeString(a.shape()));
  }
  const std::size_t w = end - begin;
  Tensor out = Matrix(m, w);
  View(out.mutable_data(), m, w) =
      View(a).middleCols(static_cast<Eigen::Index>(begin), static_cast<Eigen::Index>(w));
  if (ShouldRecord({&a})) {
    GradTape::Active()->Record(out, [a, begin, m, n, w](GradTape& tape, std::span<const double> g) {
      View(tape.GradOf(a), m, n).middleCols(static_cast<Eigen::Index>(begin),
                                            static_cast<Eigen::Index>(w)) += View(g, m, w);
    });
  }
  return out;
}

Tensor GatherRows(const Tensor& a, std::span<const std::size_t> indices) {
  if (indices.empty()) throw DimensionError("gather_rows: no indices");
  const std::size_t n = a.cols();
  Tensor out = Matrix(indices.size(), n);
  auto o = out.mutable_data();
  auto x = a.data();
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= a.rows()) {
      throw DimensionError("gather_rows: index " + std::to_string(indices[i]) +
                           " out of range for " + ShapeString(a.shape()));
    }
    std::copy_n(x.begin() + static_cast<std::ptrdiff_t>(indices[i] * n), n,
                o.begin() + static_cast<std::ptrdiff_t>(i * n));
  }
  if (ShouldRecord({&a})) {
    std::vector<std::size_t> idx(indices.begin(), indices.end());
    GradTape::Active()->Record(out, [a, idx, n](GradTape& tape, std::span<const double> g) {
      auto ga = tape.GradOf(a);
      for (std::size_t i = 0; i < idx.size(); ++i) {
        for (std::size_t j = 0; j < n; ++j) ga[idx[i] * n + j] += g[i * n + j];
      }
    });
  }
  return out;
}

Tensor LstmScan(const Tensor& gate_inputs, const Tensor& recurrent, const Tensor& h0,
                const Tensor& c0, bool reverse) {
  const std::size_t steps = gate_inputs.rows();
  const std::size_t hidden = recurrent.rows();
  const std::size_t width = 4 * hidden;
  if (gate_inputs.cols() != width || recurrent.cols() != width) {
    throw DimensionError("lstm_scan: gate inputs " + ShapeString(gate_inputs.shape()) +
                         " and recurrent weights " + ShapeString(recurrent.shape()) +
                         " disagree on 4*hidden");
  }
  if (h0.size() != hidden || c0.size() != hidden) {
    throw DimensionError("lstm_scan: initial state must have " + std::to_string(hidden) +
                         " features");
  }

  // Post-activation gates [i, f, g, o] per step, kept for the adjoint.
  auto acts = std::make_shared<std::vector<double>>(steps * width);
  Tensor out = Matrix(steps, 2 * hidden);
  auto o = out.mutable_data();
  auto u = View(recurrent);
  auto x = gate_inputs.data();

  Eigen::RowVectorXd h = View(h0.data(), 1, hidden).row(0);
  Eigen::RowVectorXd c = View(c0.data(), 1, hidden).row(0);
  Eigen::RowVectorXd z(static_cast<Eigen::Index>(width));
  for (std::size_t k = 0; k < steps; ++k) {
    const std::size_t t = reverse ? steps - 1 - k : k;
    z.noalias() = h * u;
    double* a = acts->data() + t * width;
    const double* xt = x.data() + t * width;
    for (std::size_t j = 0; j < hidden; ++j) {
      const double ig = SigmoidValue(xt[j] + z[j]);
      const double fg = SigmoidValue(xt[hidden + j] + z[hidden + j]);
      const double gg = std::tanh(xt[2 * hidden + j] + z[2 * hidden + j]);
      const double og = SigmoidValue(xt[3 * hidden + j] + z[3 * hidden + j]);
      a[j] = ig;
      a[hidden + j] = fg;
      a[2 * hidden + j] = gg;
      a[3 * hidden + j] = og;
      c[j] = fg * c[j] + ig * gg;
      h[j] = og * std::tanh(c[j]);
    }
    double* row = o.data() + t * 2 * hidden;
    for (std::size_t j = 0; j < hidden; ++j) {
      row[j] = h[j];
      row[hidden + j] = c[j];
    }
  }

  if (ShouldRecord({&gate_inputs, &recurrent, &h0, &c0})) {
    GradTape::Active()->Record(out, [gate_inputs, recurrent, h0, c0, out, acts, steps, hidden,
                                     width, reverse](GradTape& tape, std::span<const double> g) {
      auto y = out.data();
      auto uv = View(recurrent);
      RowMatrix dz(static_cast<Eigen::Index>(steps), static_cast<Eigen::Index>(width));
      RowMatrix h_prev(static_cast<Eigen::Index>(steps), static_cast<Eigen::Index>(hidden));
      Eigen::RowVectorXd dh_next = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(hidden));
      Eigen::RowVectorXd dc_next = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(hidden));

      for (std::size_t k = steps; k-- > 0;) {
        const std::size_t t = reverse ? steps - 1 - k : k;
        const bool first = (k == 0);
        const std::size_t prev = reverse ? t + 1 : t - 1;
        const double* a = acts->data() + t * width;
        const double* row = y.data() + t * 2 * hidden;
        const double* gr = g.data() + t * 2 * hidden;
        const double* hp = first ? h0.data().data() : y.data() + prev * 2 * hidden;
        const double* cp = first ? c0.data().data() : y.data() + prev * 2 * hidden + hidden;
        for (std::size_t j = 0; j < hidden; ++j) {
          const double ig = a[j], fg = a[hidden + j], gg = a[2 * hidden + j], og = a[3 * hidden + j];
          const double tc = std::tanh(row[hidden + j]);
          const double dh = gr[j] + dh_next[j];
          const double dc = gr[hidden + j] + dc_next[j] + dh * og * (1.0 - tc * tc);
          dz(t, j) = dc * gg * ig * (1.0 - ig);
          dz(t, hidden + j) = dc * cp[j] * fg * (1.0 - fg);
          dz(t, 2 * hidden + j) = dc * ig * (1.0 - gg * gg);
          dz(t, 3 * hidden + j) = dh * tc * og * (1.0 - og);
          dc_next[j] = dc * fg;
          h_prev(t, j) = hp[j];
        }
        dh_next.noalias() = dz.row(t) * uv.transpose();
      }

      if (gate_inputs.requires_grad()) View(tape.GradOf(gate_inputs), steps, width) += dz;
      if (recurrent.requires_grad()) {
        View(tape.GradOf(recurrent), hidden, width).noalias() += h_prev.transpose() * dz;
      }
      if (h0.requires_grad()) View(tape.GradOf(h0), 1, hidden) += dh_next;
      if (c0.requires_grad()) View(tape.GradOf(c0), 1, hidden) += dc_next;
    });
  }
  return out;
}

}  // namespace atisr
