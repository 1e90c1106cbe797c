// atisr/metrics/evaluate.h

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

#ifndef ATISR_METRICS_EVALUATE_H_
#define ATISR_METRICS_EVALUATE_H_

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "atisr/corpus/dataset.h"
#include "atisr/isr/config.h"
#include "atisr/isr/decode.h"
#include "atisr/seq2seq/model.h"

namespace atisr {

enum class DecodeMode { kFull, kIsr, kBaseline };
std::string ToString(DecodeMode mode);
DecodeMode ParseDecodeMode(const std::string& name);

struct UtteranceScore {
  std::string id;
  std::string reference;
  std::string hypothesis;
  std::size_t edits = 0;
  std::size_t reference_length = 0;
  double cer = 0.0;
  IncrementalHypothesis decode;  // full mode: a single step
};

struct EvalReport {
  DecodeMode mode = DecodeMode::kFull;
  IsrConfig config;
  std::string label;
  std::string model_hash;
  std::string model_role;
  std::string dataset_hash;
  std::vector<UtteranceScore> utterances;
  std::size_t total_edits = 0;
  std::size_t total_reference = 0;
  double corpus_cer = 0.0;  // total edits / total reference characters
  double delay_seconds = 0.0;
  std::vector<std::string> warnings;

  /// Stable key order; no timing or filesystem information.
  nlohmann::ordered_json ToJson() const;
  static EvalReport FromJson(const nlohmann::ordered_json& j);
};

/// Decodes `dataset` in `mode` and scores it. Full mode decodes greedily up
/// to one token per encoder state plus </s> and reports the mean utterance
/// duration as its delay; the incremental modes report DelaySeconds(cfg).
/// Mode/model mismatches become warnings.
EvalReport Evaluate(const Seq2SeqModel& model, const Dataset& dataset, DecodeMode mode,
                    const IsrConfig& cfg, std::size_t threads = 1);

/// SHA-256 over ids, transcripts and feature values of `dataset`.
std::string DatasetHash(const Dataset& dataset);

/// Aligned plain-text table, one row per report.
std::string FormatReportTable(const std::vector<EvalReport>& reports);

}  // namespace atisr

#endif  // ATISR_METRICS_EVALUATE_H_
