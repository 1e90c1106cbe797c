// atisr/isr/decode.h

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

#ifndef ATISR_ISR_DECODE_H_
#define ATISR_ISR_DECODE_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "atisr/corpus/dataset.h"
#include "atisr/isr/config.h"
#include "atisr/seq2seq/model.h"

namespace atisr {

struct IncrementalHypothesis {
  std::vector<TokenSequence> steps;         // emitted tokens, stop symbols included
  TokenSequence transcript;                 // characters only
  std::vector<std::int64_t> frame_offsets;  // input frames seen when each step ran
};

/// Incremental greedy decoding. Each step encodes its window (forward
/// encoder states carried in keep-state mode) and emits tokens until </m>,
/// </s> or `cfg.max_step_outputs` tokens; </s> ends the utterance.
IncrementalHypothesis IsrDecode(const Seq2SeqModel& model, const FeatureSequence& features,
                                const IsrConfig& cfg);

/// Full-utterance model decoded on consecutive, non-overlapping segments of
/// `cfg.main_blocks` blocks, each followed by one zero frame. Every segment
/// is decoded from <s> with fresh state until </s>, <blank> or
/// `cfg.max_step_outputs` tokens. Context widths and policies of `cfg` are
/// not used.
IncrementalHypothesis BaselineIsrDecode(const Seq2SeqModel& model,
                                        const FeatureSequence& features, const IsrConfig& cfg);

nlohmann::ordered_json HypothesisToJson(const std::string& utterance_id,
                                        const IncrementalHypothesis& hyp,
                                        const Vocabulary& vocab);

}  // namespace atisr

#endif  // ATISR_ISR_DECODE_H_
