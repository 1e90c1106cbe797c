// atisr/seq2seq/teacher.h

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

#ifndef ATISR_SEQ2SEQ_TEACHER_H_
#define ATISR_SEQ2SEQ_TEACHER_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "atisr/corpus/dataset.h"
#include "atisr/seq2seq/model.h"
#include "atisr/seq2seq/trainer.h"

namespace atisr {

/// Attention weights of T' decoder steps over S' encoder states, row-major.
struct AttentionMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(values).subspan(r * cols, cols);
  }
  /// Appends one row; the first row fixes `cols`.
  void AppendRow(std::span<const double> weights);
  friend bool operator==(const AttentionMatrix&, const AttentionMatrix&) = default;
};

/// Decoder inputs `<s> y_1..y_T` and targets `y_1..y_T </s>`.
struct TeacherForcing {
  TokenSequence inputs;
  TokenSequence targets;
};

/// Throws DataError for an empty transcript or a character outside `vocab`.
TeacherForcing MakeTeacherForcing(const Vocabulary& vocab, std::string_view transcript);

/// Teacher-forced cross-entropy of one utterance.
Tensor TeacherForcedLoss(const Seq2SeqModel& model, const FeatureSequence& features,
                         const TeacherForcing& tokens);

struct GreedyResult {
  TokenSequence tokens;  // includes the final </s> when one was emitted
  AttentionMatrix attention;
};

/// Greedy search from `<s>` until `</s>` or `max_len` tokens.
GreedyResult GreedyDecode(const Seq2SeqModel& model, const FeatureSequence& features,
                          std::size_t max_len);

/// Teacher-forced attention rows over `transcript </s>`.
AttentionMatrix CaptureAlignment(const Seq2SeqModel& model, const FeatureSequence& features,
                                 std::string_view transcript);

struct TeacherRun {
  Seq2SeqModel model;
  TrainingLog log;
};

/// Trains a freshly initialized model (seeded from `hyper.seed`) on `train`,
/// selecting the epoch with the lowest `dev` loss.
TeacherRun TrainTeacher(const Dataset& train, const Dataset& dev, const Vocabulary& vocab,
                        const ArchConfig& arch, const TrainHyper& hyper,
                        const EpochCallback& on_epoch = {});

}  // namespace atisr

#endif  // ATISR_SEQ2SEQ_TEACHER_H_
