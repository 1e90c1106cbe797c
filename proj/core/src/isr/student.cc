// isr/student.cc

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

#include "atisr/isr/student.h"

#include "atisr/error.h"
#include "atisr/numerics/ops.h"

namespace atisr {

StepEncoding EncodeStep(const Seq2SeqModel& model, const FeatureSequence& features,
                        const IsrConfig& cfg, std::size_t step, const EncoderCarry* carry) {
  if (features.dim != model.arch().feature_dim) {
    throw ConfigurationError("feature dim " + std::to_string(features.dim) +
                             " does not match the model input dim " +
                             std::to_string(model.arch().feature_dim));
  }
  const SegmentStep window = StepWindow(cfg, step);
  Tensor x = FeatureWindow(features, window.frame_begin, window.frame_end);
  if (x.rows() != cfg.window_frames()) {
    throw Error("step window of " + std::to_string(x.rows()) + " frames, expected " +
                std::to_string(cfg.window_frames()));
  }
  EncoderOutput enc = model.encoder().Encode(x, carry, cfg.step_frames());
  return {model.scorer().Prepare(enc.states), enc.carry};
}

TokenId StepStartToken(const IsrConfig& cfg, std::size_t step, const TokenSequence& previous) {
  if (step == 0) return kBosId;
  if (cfg.init == InitPolicy::kLastChar) {
    for (auto it = previous.rbegin(); it != previous.rend(); ++it) {
      if (!Vocabulary::IsSpecial(*it)) return *it;
    }
  }
  return kBlockBeginId;
}

Tensor StudentLoss(const Seq2SeqModel& model, const FeatureSequence& features,
                   const SegmentedExample& example, const IsrConfig& cfg) {
  const bool keep = cfg.state == StatePolicy::kKeep;
  std::optional<EncoderCarry> carry;
  DecoderState state = model.decoder().InitialState();
  std::vector<Tensor> rows;
  TokenSequence targets;
  const TokenSequence none;
  for (std::size_t n = 0; n < example.steps.size(); ++n) {
    const SegmentStep& step = example.steps[n];
    StepEncoding enc = EncodeStep(model, features, cfg, n, carry ? &*carry : nullptr);
    if (keep) carry = enc.carry;
    if (!keep) state = model.decoder().InitialState();
    TokenId prev = StepStartToken(cfg, n, n == 0 ? none : example.steps[n - 1].targets);
    for (TokenId target : step.targets) {
      DecoderStepResult r = model.decoder().Step(model.scorer(), enc.keys, prev, state);
      rows.push_back(r.distribution);
      targets.push_back(target);
      state = r.state;
      prev = target;
    }
  }
  if (rows.empty()) throw DataError(example.utterance_id + ": no step targets");
  return CrossEntropyLoss(ConcatRows(rows), targets);
}

namespace {

std::vector<const FeatureSequence*> MatchFeatures(const StudentDataset& data,
                                                  const Dataset& corpus) {
  std::vector<const FeatureSequence*> out;
  out.reserve(data.size());
  for (const auto& ex : data.examples) {
    const Utterance* u = corpus.Find(ex.segments.utterance_id);
    if (!u) {
      throw DataError("utterance " + ex.segments.utterance_id +
                      " of the student dataset is missing from the corpus");
    }
    out.push_back(&u->features);
  }
  return out;
}

}  // namespace

StudentRun TrainStudent(const StudentDataset& train, const Dataset& train_corpus,
                        const StudentDataset& dev, const Dataset& dev_corpus,
                        const Vocabulary& vocab, const ArchConfig& arch, const IsrConfig& cfg,
                        const TrainHyper& hyper, const EpochCallback& on_epoch) {
  cfg.Validate();
  for (const StudentDataset* data : {&train, &dev}) {
    if (!cfg.SameSegmentation(data->config)) {
      throw ConfigurationError("student config (main " + std::to_string(cfg.main_blocks) +
                               ", look-back " + std::to_string(cfg.look_back) +
                               ", look-ahead " + std::to_string(cfg.look_ahead) +
                               ") does not match the dataset built with (main " +
                               std::to_string(data->config.main_blocks) + ", look-back " +
                               std::to_string(data->config.look_back) + ", look-ahead " +
                               std::to_string(data->config.look_ahead) + ")");
    }
  }
  if (train.examples.empty()) throw UsageError("student training set is empty");
  const auto train_features = MatchFeatures(train, train_corpus);
  const auto dev_features = MatchFeatures(dev, dev_corpus);

  StudentRun run{Seq2SeqModel(arch, vocab, hyper.seed, ModelRole::kStudent), {}};
  ExampleLoss train_loss = [&](const Seq2SeqModel& m, std::size_t i) {
    return StudentLoss(m, *train_features[i], train.examples[i].segments, cfg);
  };
  ExampleLoss dev_loss = [&](const Seq2SeqModel& m, std::size_t i) {
    return StudentLoss(m, *dev_features[i], dev.examples[i].segments, cfg);
  };
  run.log = Fit(run.model, train.size(), train_loss, dev.size(), dev_loss, hyper, on_epoch);
  return run;
}

}  // namespace atisr
