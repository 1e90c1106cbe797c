// seq2seq/trainer.cc

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

#include "atisr/seq2seq/trainer.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>

#include "atisr/error.h"
#include "atisr/numerics/random.h"

namespace atisr {

void to_json(nlohmann::ordered_json& j, const TrainHyper& h) {
  j = nlohmann::ordered_json{{"epochs", h.epochs},
                             {"batch_size", h.batch_size},
                             {"lr", h.adam.lr},
                             {"beta1", h.adam.beta1},
                             {"beta2", h.adam.beta2},
                             {"eps", h.adam.eps},
                             {"lr_decay", h.lr_decay},
                             {"clip_norm", h.clip_norm},
                             {"seed", h.seed},
                             {"max_steps", h.max_steps}};
}

void from_json(const nlohmann::ordered_json& j, TrainHyper& h) {
  TrainHyper d;
  h.epochs = j.value("epochs", d.epochs);
  h.batch_size = j.value("batch_size", d.batch_size);
  h.adam.lr = j.value("lr", d.adam.lr);
  h.adam.beta1 = j.value("beta1", d.adam.beta1);
  h.adam.beta2 = j.value("beta2", d.adam.beta2);
  h.adam.eps = j.value("eps", d.adam.eps);
  h.lr_decay = j.value("lr_decay", d.lr_decay);
  h.clip_norm = j.value("clip_norm", d.clip_norm);
  h.seed = j.value("seed", d.seed);
  h.max_steps = j.value("max_steps", d.max_steps);
}

nlohmann::ordered_json TrainingLog::ToJson() const {
  nlohmann::ordered_json j;
  j["best_epoch"] = best_epoch;
  j["best_dev_loss"] = std::isfinite(best_dev_loss) ? nlohmann::ordered_json(best_dev_loss)
                                                    : nlohmann::ordered_json(nullptr);
  j["steps"] = steps;
  j["epochs"] = nlohmann::ordered_json::array();
  for (const auto& e : epochs) {
    j["epochs"].push_back({{"epoch", e.epoch},
                           {"train_loss", e.train_loss},
                           {"dev_loss", e.dev_loss},
                           {"mean_grad_norm", e.mean_grad_norm}});
  }
  return j;
}

void ParallelFor(std::size_t count, std::size_t threads,
                 const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  const std::size_t workers = std::min(threads, count);
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

double MeanLoss(const Seq2SeqModel& model, std::size_t count, const ExampleLoss& loss,
                std::size_t threads) {
  if (count == 0) return 0.0;
  std::vector<double> values(count);
  ParallelFor(count, threads, [&](std::size_t i) { values[i] = loss(model, i).item(); });
  double total = 0.0;
  for (double v : values) total += v;
  return total / static_cast<double>(count);
}

TrainingLog Fit(Seq2SeqModel& model, std::size_t train_count, const ExampleLoss& train_loss,
                std::size_t dev_count, const ExampleLoss& dev_loss, const TrainHyper& hyper,
                const EpochCallback& on_epoch) {
  if (train_count == 0) throw UsageError("training set is empty");
  if (hyper.batch_size == 0) throw UsageError("batch size must be positive");
  TrainingLog log;
  if (hyper.epochs == 0) return log;

  const ParameterList& params = model.parameters();
  AdamState adam;
  Rng shuffle_rng = Rng::Derive(hyper.seed, "train/shuffle");
  std::vector<std::size_t> order(train_count);
  for (std::size_t i = 0; i < train_count; ++i) order[i] = i;
  std::optional<Seq2SeqModel> best;
  AdamHyper step_hyper = hyper.adam;

  for (std::size_t epoch = 1; epoch <= hyper.epochs; ++epoch) {
    if (epoch > 1) step_hyper.lr *= hyper.lr_decay;
    shuffle_rng.Shuffle(order);
    double loss_sum = 0.0, norm_sum = 0.0;
    std::size_t batches = 0;
    for (std::size_t begin = 0; begin < train_count; begin += hyper.batch_size) {
      const std::size_t end = std::min(train_count, begin + hyper.batch_size);
      const std::size_t n = end - begin;
      std::vector<double> losses(n);
      std::vector<GradientList> grads(n);
      ParallelFor(n, hyper.threads, [&](std::size_t k) {
        GradTape tape;
        Tensor loss;
        {
          TapeScope scope(tape);
          loss = train_loss(model, order[begin + k]);
        }
        losses[k] = loss.item();
        if (!std::isfinite(losses[k])) return;
        grads[k] = CollectGradients(params, tape.Backward(loss));
      });
      for (std::size_t k = 0; k < n; ++k) {
        if (!std::isfinite(losses[k])) {
          throw TrainingError("non-finite loss at epoch " + std::to_string(epoch) + ", batch " +
                              std::to_string(batches + 1) + ", example " +
                              std::to_string(order[begin + k]));
        }
      }
      GradientList total = std::move(grads[0]);
      for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t p = 0; p < total.size(); ++p) {
          for (std::size_t i = 0; i < total[p].size(); ++i) total[p][i] += grads[k][p][i];
        }
      }
      const double inv = 1.0 / static_cast<double>(n);
      for (auto& g : total) {
        for (double& v : g) v *= inv;
      }
      norm_sum += ClipGlobalNorm(total, hyper.clip_norm);
      AdamStep(params, total, adam, step_hyper);
      for (double l : losses) loss_sum += l;
      ++batches;
      ++log.steps;
      if (hyper.max_steps != 0 && log.steps >= hyper.max_steps) break;
    }

    EpochRecord rec;
    rec.epoch = epoch;
    rec.train_loss = loss_sum / static_cast<double>(std::min(train_count, batches * hyper.batch_size));
    rec.dev_loss = dev_count ? MeanLoss(model, dev_count, dev_loss, hyper.threads) : rec.train_loss;
    rec.mean_grad_norm = norm_sum / static_cast<double>(batches);
    log.epochs.push_back(rec);
    if (rec.dev_loss < log.best_dev_loss) {
      log.best_dev_loss = rec.dev_loss;
      log.best_epoch = epoch;
      if (best) best->CopyParametersFrom(model);
      else best = model.Clone();
    }
    if (on_epoch) on_epoch(rec);
    if (hyper.max_steps != 0 && log.steps >= hyper.max_steps) break;
  }
  if (best) model.CopyParametersFrom(*best);
  return log;
}

}  // namespace atisr
