// atisr/metrics/cer.h

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

#ifndef ATISR_METRICS_CER_H_
#define ATISR_METRICS_CER_H_

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "atisr/isr/config.h"

namespace atisr {

/// Unit-cost Levenshtein distance between two symbol sequences.
template <typename T>
std::size_t EditDistance(const std::vector<T>& ref, const std::vector<T>& hyp) {
  std::vector<std::size_t> prev(hyp.size() + 1), cur(hyp.size() + 1);
  for (std::size_t j = 0; j <= hyp.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= ref.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= hyp.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      cur[j] = std::min(sub, std::min(prev[j], cur[j - 1]) + 1);
    }
    prev.swap(cur);
  }
  return prev[hyp.size()];
}

/// Character edit distance of two UTF-8 strings.
std::size_t CharacterEdits(std::string_view reference, std::string_view hypothesis);

/// Character edit distance over the reference length. An empty reference
/// gives 0 against an empty hypothesis and throws MetricError otherwise.
double Cer(std::string_view reference, std::string_view hypothesis);

/// Frame shift and analysis window of the feature front end, in seconds.
inline constexpr double kFrameShiftSeconds = 0.0125;
inline constexpr double kFrameWindowSeconds = 0.050;

/// Audio span covered by `frames` feature frames.
double FramesToSeconds(std::size_t frames);

/// Audio a step must receive before decoding: the window of
/// 8 * (look_back + main_blocks + look_ahead) frames.
double DelaySeconds(const IsrConfig& cfg);

}  // namespace atisr

#endif  // ATISR_METRICS_CER_H_
