// atisr/pipeline/experiment.h

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

#ifndef ATISR_PIPELINE_EXPERIMENT_H_
#define ATISR_PIPELINE_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "atisr/corpus/mel.h"
#include "atisr/corpus/synthetic.h"
#include "atisr/isr/config.h"
#include "atisr/metrics/evaluate.h"
#include "atisr/seq2seq/model.h"
#include "atisr/seq2seq/trainer.h"

namespace atisr {

/// Layer sizes used for the synthetic task.
ArchConfig SyntheticArch();

/// Everything a pipeline run depends on. The seed drives data generation,
/// teacher training and (offset by one) student training.
struct ExperimentConfig {
  std::uint64_t seed = 1;
  SyntheticSpec synthetic;
  ArchConfig arch = SyntheticArch();
  TrainHyper teacher;
  TrainHyper student;
  IsrConfig isr;
  std::string eval_split = "test";

  TrainHyper TeacherHyper() const;
  TrainHyper StudentHyper() const;

  nlohmann::ordered_json ToJson() const;
  static ExperimentConfig FromJson(const nlohmann::ordered_json& j);
  /// Throws ConfigurationError naming the file on unreadable or invalid JSON.
  static ExperimentConfig Load(const std::filesystem::path& path);
};

/// Artifact locations below one output directory.
class ExperimentLayout {
 public:
  explicit ExperimentLayout(std::filesystem::path root) : root_(std::move(root)) {}

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path Manifest(const std::string& split) const;
  std::filesystem::path Vocab() const;
  std::filesystem::path Teacher() const;
  std::filesystem::path Distilled(const IsrConfig& cfg, const std::string& split) const;
  std::filesystem::path Student(const IsrConfig& cfg) const;
  std::filesystem::path Report(const std::string& label) const;
  std::filesystem::path Hypotheses(const std::string& label) const;
  std::filesystem::path ReportDir() const;
  std::filesystem::path Summary() const;

 private:
  std::filesystem::path root_;
};

/// "m1-lb0-la1": the fields that shape distilled targets.
std::string SegmentationTag(const IsrConfig& cfg);
/// Segmentation tag plus state and init policy.
std::string StudentTag(const IsrConfig& cfg);
/// Default report label of an evaluation.
std::string EvalLabel(DecodeMode mode, const IsrConfig& cfg);

using Logger = std::function<void(const std::string&)>;

struct StageOptions {
  std::size_t threads = 1;
  Logger log;
};

/// Synthetic train/dev/test corpora and the vocabulary.
void GenerateDataStage(const ExperimentConfig& cfg, const ExperimentLayout& layout,
                       const StageOptions& opt);

/// Log-mel features of the WAV files listed in `list` (lines:
/// id <TAB> wav path <TAB> transcript) written as a dataset manifest.
void FeaturizeStage(const std::filesystem::path& list, const std::filesystem::path& manifest,
                    const MelConfig& mel, const StageOptions& opt);

/// Returns the SHA-256 of the saved teacher blob.
std::string TrainTeacherStage(const ExperimentConfig& cfg, const ExperimentLayout& layout,
                              const StageOptions& opt);

/// Distills the train and dev splits for the segmentation of `isr`.
void DistillStage(const ExperimentConfig& cfg, const ExperimentLayout& layout,
                  const IsrConfig& isr, const StageOptions& opt);

std::string TrainStudentStage(const ExperimentConfig& cfg, const ExperimentLayout& layout,
                              const IsrConfig& isr, const StageOptions& opt);

/// Checkpoint a mode reads by default: the teacher for full and baseline
/// decoding, the matching student for incremental decoding.
std::filesystem::path DefaultCheckpoint(const ExperimentLayout& layout, DecodeMode mode,
                                        const IsrConfig& isr);

/// Writes hypotheses for `split` to `output` (line-delimited).
void DecodeStage(const ExperimentConfig& cfg, const ExperimentLayout& layout, DecodeMode mode,
                 const IsrConfig& isr, const std::string& split,
                 const std::filesystem::path& checkpoint, const std::filesystem::path& output,
                 const StageOptions& opt);

/// Scores `split` and writes the report and hypotheses under reports/.
EvalReport EvaluateStage(const ExperimentConfig& cfg, const ExperimentLayout& layout,
                         DecodeMode mode, const IsrConfig& isr, const std::string& split,
                         const std::filesystem::path& checkpoint, const std::string& label,
                         const StageOptions& opt);

/// Table over all reports under reports/ (sorted by file name), also written
/// to reports/summary.txt.
std::string ReportStage(const ExperimentLayout& layout);

}  // namespace atisr

#endif  // ATISR_PIPELINE_EXPERIMENT_H_
