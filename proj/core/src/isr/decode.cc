// isr/decode.cc

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

#include "atisr/isr/decode.h"

#include <algorithm>
#include <optional>

#include "atisr/distill/segment.h"
#include "atisr/error.h"
#include "atisr/isr/student.h"
#include "atisr/numerics/ops.h"

namespace atisr {

IncrementalHypothesis IsrDecode(const Seq2SeqModel& model, const FeatureSequence& features,
                                const IsrConfig& cfg) {
  cfg.Validate();
  if (features.frames == 0) throw DataError("utterance has no frames");
  const bool keep = cfg.state == StatePolicy::kKeep;
  const std::size_t steps = StepCount(BlockCount(features.frames), cfg.main_blocks);
  IncrementalHypothesis hyp;
  std::optional<EncoderCarry> carry;
  DecoderState state = model.decoder().InitialState();
  const TokenSequence none;
  for (std::size_t n = 0; n < steps; ++n) {
    StepEncoding enc = EncodeStep(model, features, cfg, n, carry ? &*carry : nullptr);
    if (keep) carry = enc.carry;
    if (!keep) state = model.decoder().InitialState();
    TokenId prev = StepStartToken(cfg, n, n == 0 ? none : hyp.steps.back());
    TokenSequence emitted;
    while (emitted.size() < cfg.max_step_outputs) {
      DecoderStepResult r = model.decoder().Step(model.scorer(), enc.keys, prev, state);
      state = r.state;
      prev = static_cast<TokenId>(ArgMax(r.distribution));
      emitted.push_back(prev);
      if (prev == kBlockEndId || prev == kEosId) break;
      if (!Vocabulary::IsSpecial(prev)) hyp.transcript.push_back(prev);
    }
    hyp.steps.push_back(std::move(emitted));
    hyp.frame_offsets.push_back(StepWindow(cfg, n).frame_end);
    if (hyp.steps.back().back() == kEosId) break;
  }
  return hyp;
}

IncrementalHypothesis BaselineIsrDecode(const Seq2SeqModel& model,
                                        const FeatureSequence& features, const IsrConfig& cfg) {
  cfg.Validate();
  if (features.frames == 0) throw DataError("utterance has no frames");
  if (features.dim != model.arch().feature_dim) {
    throw ConfigurationError("feature dim " + std::to_string(features.dim) +
                             " does not match the model input dim " +
                             std::to_string(model.arch().feature_dim));
  }
  const std::size_t steps = StepCount(BlockCount(features.frames), cfg.main_blocks);
  const auto seg = static_cast<std::int64_t>(cfg.step_frames());
  const Tensor zero_frame = Tensor::Zeros({1, features.dim});
  IncrementalHypothesis hyp;
  for (std::size_t n = 0; n < steps; ++n) {
    const std::int64_t begin = static_cast<std::int64_t>(n) * seg;
    const Tensor parts[2] = {FeatureWindow(features, begin, begin + seg), zero_frame};
    AttentionKeys keys = model.scorer().Prepare(model.encoder().Encode(ConcatRows(parts)).states);
    DecoderState state = model.decoder().InitialState();
    TokenId prev = kBosId;
    TokenSequence emitted;
    while (emitted.size() < cfg.max_step_outputs) {
      DecoderStepResult r = model.decoder().Step(model.scorer(), keys, prev, state);
      state = r.state;
      prev = static_cast<TokenId>(ArgMax(r.distribution));
      emitted.push_back(prev);
      if (prev == kEosId || prev == kBlankId) break;
      if (!Vocabulary::IsSpecial(prev)) hyp.transcript.push_back(prev);
    }
    hyp.steps.push_back(std::move(emitted));
    hyp.frame_offsets.push_back(begin + seg);
  }
  return hyp;
}

nlohmann::ordered_json HypothesisToJson(const std::string& utterance_id,
                                        const IncrementalHypothesis& hyp,
                                        const Vocabulary& vocab) {
  nlohmann::ordered_json j;
  j["id"] = utterance_id;
  j["steps"] = nlohmann::ordered_json::array();
  for (const auto& step : hyp.steps) {
    nlohmann::ordered_json tokens = nlohmann::ordered_json::array();
    for (TokenId id : step) tokens.push_back(vocab.Token(id));
    j["steps"].push_back(std::move(tokens));
  }
  j["transcript"] = vocab.Decode(hyp.transcript);
  j["frame_offsets"] = hyp.frame_offsets;
  return j;
}

}  // namespace atisr
