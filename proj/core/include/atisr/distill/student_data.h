// atisr/distill/student_data.h

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

#ifndef ATISR_DISTILL_STUDENT_DATA_H_
#define ATISR_DISTILL_STUDENT_DATA_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "atisr/corpus/dataset.h"
#include "atisr/distill/segment.h"
#include "atisr/seq2seq/model.h"

namespace atisr {

struct DistillFailure {
  std::string utterance_id;
  std::string reason;
};

struct StudentExample {
  SegmentedExample segments;
  MonotonicAlignment alignment;
  double max_row_sum_error = 0.0;  // max_t |sum_s A[t, s] - 1|
};

struct StudentDataset {
  IsrConfig config;
  std::string teacher_hash;
  std::vector<StudentExample> examples;
  std::vector<DistillFailure> failures;
  /// Provenance written as the file header.
  nlohmann::ordered_json header;

  std::size_t size() const { return examples.size(); }
};

/// Largest share of utterances that may fail before distillation aborts.
inline constexpr double kMaxDistillFailureRate = 0.10;

/// Teacher-forced attention, monotonic alignment and segmentation for every
/// utterance of `corpus`. Failing utterances are skipped and listed; more
/// than 10% failures raise DataError. Utterances are processed in parallel
/// on up to `threads` workers; the result is in corpus order.
StudentDataset BuildStudentDataset(const Seq2SeqModel& teacher, const Dataset& corpus,
                                   const IsrConfig& cfg, std::size_t threads = 1);

/// Line-delimited records: a header, then one record per utterance with its
/// feature file reference (from `feature_paths`, by id), alignment and steps.
void SaveStudentDataset(const StudentDataset& data, const std::filesystem::path& path,
                        const std::map<std::string, std::string>& feature_paths = {});
StudentDataset LoadStudentDataset(const std::filesystem::path& path);

}  // namespace atisr

#endif  // ATISR_DISTILL_STUDENT_DATA_H_
