// seq2seq/teacher.cc

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

#include "atisr/seq2seq/teacher.h"

#include "atisr/error.h"
#include "atisr/numerics/ops.h"

namespace atisr {

void AttentionMatrix::AppendRow(std::span<const double> weights) {
  if (rows == 0) cols = weights.size();
  if (weights.size() != cols) {
    throw DimensionError("attention row of width " + std::to_string(weights.size()) +
                         " appended to a matrix of width " + std::to_string(cols));
  }
  values.insert(values.end(), weights.begin(), weights.end());
  ++rows;
}

TeacherForcing MakeTeacherForcing(const Vocabulary& vocab, std::string_view transcript) {
  if (transcript.empty()) throw DataError("empty transcript");
  TeacherForcing out;
  out.inputs.push_back(kBosId);
  for (const std::string& ch : SplitCharacters(transcript)) {
    auto id = vocab.Find(ch);
    if (!id || Vocabulary::IsSpecial(*id)) {
      throw DataError("character '" + ch + "' is not in the vocabulary");
    }
    out.inputs.push_back(*id);
    out.targets.push_back(*id);
  }
  out.targets.push_back(kEosId);
  return out;
}

namespace {

void CheckFeatures(const Seq2SeqModel& model, const FeatureSequence& features) {
  if (features.frames == 0) throw DataError("utterance has no frames");
  if (features.dim != model.arch().feature_dim) {
    throw ConfigurationError("feature dim " + std::to_string(features.dim) +
                             " does not match the model input dim " +
                             std::to_string(model.arch().feature_dim));
  }
}

AttentionKeys EncodeUtterance(const Seq2SeqModel& model, const FeatureSequence& features) {
  CheckFeatures(model, features);
  Tensor states = model.encoder().Encode(FeaturesToTensor(features)).states;
  return model.scorer().Prepare(states);
}

}  // namespace

Tensor TeacherForcedLoss(const Seq2SeqModel& model, const FeatureSequence& features,
                         const TeacherForcing& tokens) {
  AttentionKeys keys = EncodeUtterance(model, features);
  DecoderState state = model.decoder().InitialState();
  std::vector<Tensor> rows;
  rows.reserve(tokens.inputs.size());
  for (TokenId prev : tokens.inputs) {
    DecoderStepResult step = model.decoder().Step(model.scorer(), keys, prev, state);
    rows.push_back(step.distribution);
    state = step.state;
  }
  return CrossEntropyLoss(ConcatRows(rows), tokens.targets);
}

GreedyResult GreedyDecode(const Seq2SeqModel& model, const FeatureSequence& features,
                          std::size_t max_len) {
  if (max_len == 0) throw UsageError("max_len must be at least 1");
  AttentionKeys keys = EncodeUtterance(model, features);
  DecoderState state = model.decoder().InitialState();
  GreedyResult out;
  TokenId prev = kBosId;
  while (out.tokens.size() < max_len) {
    DecoderStepResult step = model.decoder().Step(model.scorer(), keys, prev, state);
    prev = static_cast<TokenId>(ArgMax(step.distribution));
    out.tokens.push_back(prev);
    out.attention.AppendRow(step.weights.data());
    state = step.state;
    if (prev == kEosId) break;
  }
  return out;
}

AttentionMatrix CaptureAlignment(const Seq2SeqModel& model, const FeatureSequence& features,
                                 std::string_view transcript) {
  TeacherForcing tokens = MakeTeacherForcing(model.vocab(), transcript);
  AttentionKeys keys = EncodeUtterance(model, features);
  DecoderState state = model.decoder().InitialState();
  AttentionMatrix out;
  for (TokenId prev : tokens.inputs) {
    DecoderStepResult step = model.decoder().Step(model.scorer(), keys, prev, state);
    out.AppendRow(step.weights.data());
    state = step.state;
  }
  return out;
}

TeacherRun TrainTeacher(const Dataset& train, const Dataset& dev, const Vocabulary& vocab,
                        const ArchConfig& arch, const TrainHyper& hyper,
                        const EpochCallback& on_epoch) {
  if (train.empty()) throw UsageError("teacher training set is empty");
  auto prepare = [&](const Dataset& data) {
    std::vector<TeacherForcing> out;
    out.reserve(data.size());
    for (const Utterance& u : data.utterances) {
      if (u.features.frames == 0) throw DataError(u.id + ": utterance has no frames");
      try {
        out.push_back(MakeTeacherForcing(vocab, u.transcript));
      } catch (const DataError& e) {
        throw DataError(u.id + ": " + e.what());
      }
    }
    return out;
  };
  const std::vector<TeacherForcing> train_tokens = prepare(train);
  const std::vector<TeacherForcing> dev_tokens = prepare(dev);

  TeacherRun run{Seq2SeqModel(arch, vocab, hyper.seed, ModelRole::kTeacher), {}};
  ExampleLoss train_loss = [&](const Seq2SeqModel& m, std::size_t i) {
    return TeacherForcedLoss(m, train.utterances[i].features, train_tokens[i]);
  };
  ExampleLoss dev_loss = [&](const Seq2SeqModel& m, std::size_t i) {
    return TeacherForcedLoss(m, dev.utterances[i].features, dev_tokens[i]);
  };
  run.log = Fit(run.model, train.size(), train_loss, dev.size(), dev_loss, hyper, on_epoch);
  return run;
}

}  // namespace atisr
