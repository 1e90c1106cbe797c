// atisr/distill/segment.h

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

#ifndef ATISR_DISTILL_SEGMENT_H_
#define ATISR_DISTILL_SEGMENT_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "atisr/corpus/vocabulary.h"
#include "atisr/distill/alignment.h"
#include "atisr/isr/config.h"

namespace atisr {

/// One incremental step: its input window and its target tokens.
struct SegmentStep {
  // Input frames [frame_begin, frame_end). May extend past either end of the
  // utterance; frames outside it are zero.
  std::int64_t frame_begin = 0;
  std::int64_t frame_end = 0;
  // Main blocks [block_begin, block_end) this step transcribes.
  std::size_t block_begin = 0;
  std::size_t block_end = 0;
  TokenSequence targets;  // characters, then </m> (or </s> on the last step)

  friend bool operator==(const SegmentStep&, const SegmentStep&) = default;
};

struct SegmentedExample {
  std::string utterance_id;
  IsrConfig config;
  std::size_t total_blocks = 0;
  std::vector<SegmentStep> steps;

  friend bool operator==(const SegmentedExample&, const SegmentedExample&) = default;
};

/// Number of steps for `total_blocks` blocks and `main_blocks` per step.
std::size_t StepCount(std::size_t total_blocks, std::size_t main_blocks);

/// Window of step `step` under `cfg`: main blocks widened by the look-back
/// and look-ahead blocks, in frames.
SegmentStep StepWindow(const IsrConfig& cfg, std::size_t step);

/// Splits `transcript` (character ids) into per-step targets.
///
/// `alignment` holds one block per character plus one for </s>. Step n owns
/// main blocks [n*B, (n+1)*B); its target is the characters aligned to those
/// blocks followed by </m>. </s> is placed on the last step regardless of
/// its aligned block, and that step ends with </s> instead of </m>. Throws
/// DataError when the lengths disagree or a block is out of range.
SegmentedExample SegmentTargets(const MonotonicAlignment& alignment,
                                const TokenSequence& transcript, const IsrConfig& cfg,
                                std::size_t total_blocks, std::string utterance_id = {});

/// Characters of all steps with </m> and </s> removed.
TokenSequence FlattenTargets(const SegmentedExample& example);

}  // namespace atisr

#endif  // ATISR_DISTILL_SEGMENT_H_
