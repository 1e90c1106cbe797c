// metrics/cer.cc

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

#include "atisr/metrics/cer.h"

#include "atisr/corpus/vocabulary.h"
#include "atisr/error.h"

namespace atisr {

std::size_t CharacterEdits(std::string_view reference, std::string_view hypothesis) {
  return EditDistance(SplitCharacters(reference), SplitCharacters(hypothesis));
}

double Cer(std::string_view reference, std::string_view hypothesis) {
  const auto ref = SplitCharacters(reference);
  const auto hyp = SplitCharacters(hypothesis);
  if (ref.empty()) {
    if (hyp.empty()) return 0.0;
    throw MetricError("character error rate is undefined for an empty reference");
  }
  return static_cast<double>(EditDistance(ref, hyp)) / static_cast<double>(ref.size());
}

double FramesToSeconds(std::size_t frames) {
  if (frames == 0) return 0.0;
  return static_cast<double>(frames - 1) * kFrameShiftSeconds + kFrameWindowSeconds;
}

double DelaySeconds(const IsrConfig& cfg) { return FramesToSeconds(cfg.window_frames()); }

}  // namespace atisr
