// atisr/seq2seq/trainer.h

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

#ifndef ATISR_SEQ2SEQ_TRAINER_H_
#define ATISR_SEQ2SEQ_TRAINER_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include <nlohmann/json.hpp>

#include "atisr/numerics/optim.h"
#include "atisr/seq2seq/model.h"

namespace atisr {

struct TrainHyper {
  std::size_t epochs = 20;
  std::size_t batch_size = 8;  // utterances per optimizer step
  AdamHyper adam;
  // The learning rate of epoch e is adam.lr * lr_decay^(e - 1).
  double lr_decay = 1.0;
  double clip_norm = 5.0;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  // Stop after this many optimizer steps in total (0: no limit).
  std::size_t max_steps = 0;
};

void to_json(nlohmann::ordered_json& j, const TrainHyper& h);
void from_json(const nlohmann::ordered_json& j, TrainHyper& h);

struct EpochRecord {
  std::size_t epoch = 0;
  double train_loss = 0.0;
  double dev_loss = 0.0;
  double mean_grad_norm = 0.0;
};

struct TrainingLog {
  std::vector<EpochRecord> epochs;
  std::size_t best_epoch = 0;
  double best_dev_loss = std::numeric_limits<double>::infinity();
  std::size_t steps = 0;

  nlohmann::ordered_json ToJson() const;
};

/// Loss of example `index` under `model`, built while a tape is active.
using ExampleLoss = std::function<Tensor(const Seq2SeqModel& model, std::size_t index)>;
using EpochCallback = std::function<void(const EpochRecord&)>;

/// Minibatch training with Adam and global-norm clipping.
///
/// A minibatch gradient is the mean of per-example gradients; examples of a
/// batch are differentiated on separate tapes (in parallel when
/// `threads` > 1) and reduced in example order, so results do not depend on
/// the thread count. Shuffling is seeded from `hyper.seed`. After the last
/// epoch the parameters of the epoch with the lowest dev loss (train loss
/// when there is no dev set) are restored.
TrainingLog Fit(Seq2SeqModel& model, std::size_t train_count, const ExampleLoss& train_loss,
                std::size_t dev_count, const ExampleLoss& dev_loss, const TrainHyper& hyper,
                const EpochCallback& on_epoch = {});

/// Mean loss over `count` examples, evaluated without a tape.
double MeanLoss(const Seq2SeqModel& model, std::size_t count, const ExampleLoss& loss,
                std::size_t threads = 1);

/// Runs fn(i) for i in [0, count) on up to `threads` workers.
void ParallelFor(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace atisr

#endif  // ATISR_SEQ2SEQ_TRAINER_H_
