// atisr/distill/alignment.h

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

#ifndef ATISR_DISTILL_ALIGNMENT_H_
#define ATISR_DISTILL_ALIGNMENT_H_

#include <cstddef>
#include <vector>

#include "atisr/seq2seq/teacher.h"

namespace atisr {

/// One block index per output token, non-decreasing.
struct MonotonicAlignment {
  std::vector<std::size_t> assignment;
  double score = 0.0;  // sum_t A[t, assignment[t]], accumulated in row order
};

/// Maximum-sum non-decreasing path through `attention`:
///   M[t][s] = A[t][s] + max_{s' <= s} M[t-1][s'].
/// Among equally scoring paths the lexicographically smallest assignment is
/// returned, so ties go to the smaller block. Throws DataError for an empty
/// matrix.
MonotonicAlignment ExtractMonotonicAlignment(const AttentionMatrix& attention);

/// Recomputes the score of `assignment` under `attention`.
double AlignmentScore(const AttentionMatrix& attention, const std::vector<std::size_t>& assignment);

}  // namespace atisr

#endif  // ATISR_DISTILL_ALIGNMENT_H_
