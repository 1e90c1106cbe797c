// distill/segment.cc

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

#include "atisr/distill/segment.h"

#include "atisr/error.h"

namespace atisr {

std::size_t StepCount(std::size_t total_blocks, std::size_t main_blocks) {
  return (total_blocks + main_blocks - 1) / main_blocks;
}

SegmentStep StepWindow(const IsrConfig& cfg, std::size_t step) {
  const auto block = static_cast<std::int64_t>(kFramesPerBlock);
  SegmentStep s;
  s.block_begin = step * cfg.main_blocks;
  s.block_end = s.block_begin + cfg.main_blocks;
  s.frame_begin = (static_cast<std::int64_t>(s.block_begin) -
                   static_cast<std::int64_t>(cfg.look_back)) * block;
  s.frame_end = static_cast<std::int64_t>(s.block_end + cfg.look_ahead) * block;
  return s;
}

SegmentedExample SegmentTargets(const MonotonicAlignment& alignment,
                                const TokenSequence& transcript, const IsrConfig& cfg,
                                std::size_t total_blocks, std::string utterance_id) {
  cfg.Validate();
  if (total_blocks == 0) throw DataError("segmenting an utterance with no blocks");
  if (alignment.assignment.size() != transcript.size() + 1) {
    throw DataError("alignment covers " + std::to_string(alignment.assignment.size()) +
                    " tokens, transcript has " + std::to_string(transcript.size()) +
                    " characters plus </s>");
  }
  for (std::size_t t = 0; t < alignment.assignment.size(); ++t) {
    if (alignment.assignment[t] >= total_blocks) {
      throw DataError("token " + std::to_string(t) + " aligned to block " +
                      std::to_string(alignment.assignment[t]) + " of " +
                      std::to_string(total_blocks));
    }
    if (t > 0 && alignment.assignment[t] < alignment.assignment[t - 1]) {
      throw DataError("alignment is not monotonic at token " + std::to_string(t));
    }
  }

  SegmentedExample out;
  out.utterance_id = std::move(utterance_id);
  out.config = cfg;
  out.total_blocks = total_blocks;
  const std::size_t steps = StepCount(total_blocks, cfg.main_blocks);
  out.steps.reserve(steps);
  std::size_t next = 0;
  for (std::size_t n = 0; n < steps; ++n) {
    SegmentStep step = StepWindow(cfg, n);
    const bool last = n + 1 == steps;
    while (next < transcript.size() && (last || alignment.assignment[next] < step.block_end)) {
      step.targets.push_back(transcript[next++]);
    }
    step.targets.push_back(last ? kEosId : kBlockEndId);
    out.steps.push_back(std::move(step));
  }
  return out;
}

TokenSequence FlattenTargets(const SegmentedExample& example) {
  TokenSequence out;
  for (const auto& step : example.steps) {
    for (TokenId id : step.targets) {
      if (id != kBlockEndId && id != kEosId) out.push_back(id);
    }
  }
  return out;
}

}  // namespace atisr
