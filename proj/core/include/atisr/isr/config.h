// atisr/isr/config.h

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

#ifndef ATISR_ISR_CONFIG_H_
#define ATISR_ISR_CONFIG_H_

#include <cstddef>
#include <string>

#include <nlohmann/json.hpp>

#include "atisr/network/encoder.h"

namespace atisr {

enum class StatePolicy { kKeep, kReset };
enum class InitPolicy { kBlockBegin, kLastChar };

std::string ToString(StatePolicy p);  // "keep" / "reset"
std::string ToString(InitPolicy p);   // "m" / "last-char"
StatePolicy ParseStatePolicy(const std::string& name);
InitPolicy ParseInitPolicy(const std::string& name);

/// Segmentation and decoding settings of an incremental recognizer.
struct IsrConfig {
  std::size_t main_blocks = 1;
  std::size_t look_back = 0;
  std::size_t look_ahead = 1;
  StatePolicy state = StatePolicy::kKeep;
  InitPolicy init = InitPolicy::kLastChar;
  std::size_t max_step_outputs = 30;

  std::size_t window_blocks() const { return look_back + main_blocks + look_ahead; }
  std::size_t window_frames() const { return kFramesPerBlock * window_blocks(); }
  std::size_t step_frames() const { return kFramesPerBlock * main_blocks; }

  /// Throws ConfigurationError unless main_blocks and max_step_outputs are
  /// positive.
  void Validate() const;
  /// Main blocks and context widths agree (the fields that shape targets).
  bool SameSegmentation(const IsrConfig& other) const;

  friend bool operator==(const IsrConfig&, const IsrConfig&) = default;
};

void to_json(nlohmann::ordered_json& j, const IsrConfig& c);
void from_json(const nlohmann::ordered_json& j, IsrConfig& c);

}  // namespace atisr

#endif  // ATISR_ISR_CONFIG_H_
