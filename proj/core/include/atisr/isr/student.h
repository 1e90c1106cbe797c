// atisr/isr/student.h

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

#ifndef ATISR_ISR_STUDENT_H_
#define ATISR_ISR_STUDENT_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "atisr/corpus/dataset.h"
#include "atisr/distill/student_data.h"
#include "atisr/isr/config.h"
#include "atisr/seq2seq/model.h"
#include "atisr/seq2seq/trainer.h"

namespace atisr {

/// Encoder output of one incremental step.
struct StepEncoding {
  AttentionKeys keys;
  EncoderCarry carry;  // forward states where the next step's window starts
};

/// Encodes the window of step `step` (zero outside the utterance), seeding
/// the forward directions from `carry` when given.
StepEncoding EncodeStep(const Seq2SeqModel& model, const FeatureSequence& features,
                        const IsrConfig& cfg, std::size_t step, const EncoderCarry* carry);

/// First decoder input of step `step`: <s> on the first step, otherwise <m>
/// or the last character emitted by the previous step (<m> when it emitted
/// none).
TokenId StepStartToken(const IsrConfig& cfg, std::size_t step, const TokenSequence& previous);

/// Teacher-forced cross-entropy over all step targets of one utterance.
Tensor StudentLoss(const Seq2SeqModel& model, const FeatureSequence& features,
                   const SegmentedExample& example, const IsrConfig& cfg);

struct StudentRun {
  Seq2SeqModel model;
  TrainingLog log;
};

/// Trains a freshly initialized student (seeded from `hyper.seed`).
/// Features are looked up by utterance id in the matching corpus. Throws
/// ConfigurationError when `cfg` does not segment like the datasets.
StudentRun TrainStudent(const StudentDataset& train, const Dataset& train_corpus,
                        const StudentDataset& dev, const Dataset& dev_corpus,
                        const Vocabulary& vocab, const ArchConfig& arch, const IsrConfig& cfg,
                        const TrainHyper& hyper, const EpochCallback& on_epoch = {});

}  // namespace atisr

#endif  // ATISR_ISR_STUDENT_H_
