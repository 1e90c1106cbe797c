// distill/alignment.cc

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

#include "atisr/distill/alignment.h"

#include <algorithm>
#include <numeric>

#include "atisr/error.h"

namespace atisr {

MonotonicAlignment ExtractMonotonicAlignment(const AttentionMatrix& attention) {
  const std::size_t rows = attention.rows, cols = attention.cols;
  if (rows == 0 || cols == 0) throw DataError("cannot align an empty attention matrix");

  // score[t][s]: best prefix sum ending in block s at row t.
  // pred[t][s]: block of row t-1 on that prefix.
  // rank[t][s]: lexicographic order of the chosen prefixes within row t.
  std::vector<double> score(rows * cols);
  std::vector<std::size_t> pred(rows * cols, 0);
  std::vector<std::size_t> rank(cols), next_rank(cols), order(cols);

  for (std::size_t s = 0; s < cols; ++s) {
    score[s] = attention.at(0, s);
    rank[s] = s;
  }
  for (std::size_t t = 1; t < rows; ++t) {
    const double* prev = &score[(t - 1) * cols];
    std::size_t best = 0;
    for (std::size_t s = 0; s < cols; ++s) {
      if (s > 0 && (prev[s] > prev[best] || (prev[s] == prev[best] && rank[s] < rank[best]))) {
        best = s;
      }
      pred[t * cols + s] = best;
      score[t * cols + s] = prev[best] + attention.at(t, s);
    }
    // A prefix extended by block s compares first by its parent, then by s.
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const std::size_t ra = rank[pred[t * cols + a]], rb = rank[pred[t * cols + b]];
      return ra != rb ? ra < rb : a < b;
    });
    for (std::size_t i = 0; i < cols; ++i) next_rank[order[i]] = i;
    rank.swap(next_rank);
  }

  const double* last = &score[(rows - 1) * cols];
  std::size_t end = 0;
  for (std::size_t s = 1; s < cols; ++s) {
    if (last[s] > last[end] || (last[s] == last[end] && rank[s] < rank[end])) end = s;
  }
  MonotonicAlignment out;
  out.score = last[end];
  out.assignment.resize(rows);
  out.assignment[rows - 1] = end;
  for (std::size_t t = rows - 1; t > 0; --t) {
    out.assignment[t - 1] = pred[t * cols + out.assignment[t]];
  }
  return out;
}

double AlignmentScore(const AttentionMatrix& attention, const std::vector<std::size_t>& assignment) {
  if (assignment.size() != attention.rows) {
    throw DataError("alignment has " + std::to_string(assignment.size()) + " entries for " +
                    std::to_string(attention.rows) + " attention rows");
  }
  double total = 0.0;
  for (std::size_t t = 0; t < assignment.size(); ++t) {
    if (assignment[t] >= attention.cols) throw DataError("alignment block out of range");
    total += attention.at(t, assignment[t]);
  }
  return total;
}

}  // namespace atisr
