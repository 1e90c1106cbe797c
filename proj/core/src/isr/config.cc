// isr/config.cc

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

#include "atisr/isr/config.h"

#include "atisr/error.h"

namespace atisr {

std::string ToString(StatePolicy p) { return p == StatePolicy::kKeep ? "keep" : "reset"; }

std::string ToString(InitPolicy p) { return p == InitPolicy::kBlockBegin ? "m" : "last-char"; }

StatePolicy ParseStatePolicy(const std::string& name) {
  if (name == "keep") return StatePolicy::kKeep;
  if (name == "reset") return StatePolicy::kReset;
  throw ConfigurationError("unknown state policy '" + name + "' (expected keep or reset)");
}

InitPolicy ParseInitPolicy(const std::string& name) {
  if (name == "m") return InitPolicy::kBlockBegin;
  if (name == "last-char") return InitPolicy::kLastChar;
  throw ConfigurationError("unknown init policy '" + name + "' (expected m or last-char)");
}

void IsrConfig::Validate() const {
  if (main_blocks == 0) throw ConfigurationError("main_blocks must be positive");
  if (max_step_outputs == 0) throw ConfigurationError("max_step_outputs must be positive");
}

bool IsrConfig::SameSegmentation(const IsrConfig& other) const {
  return main_blocks == other.main_blocks && look_back == other.look_back &&
         look_ahead == other.look_ahead;
}

void to_json(nlohmann::ordered_json& j, const IsrConfig& c) {
  j = nlohmann::ordered_json{{"main_blocks", c.main_blocks},
                             {"look_back", c.look_back},
                             {"look_ahead", c.look_ahead},
                             {"state", ToString(c.state)},
                             {"init", ToString(c.init)},
                             {"max_step_outputs", c.max_step_outputs}};
}

void from_json(const nlohmann::ordered_json& j, IsrConfig& c) {
  IsrConfig d;
  c.main_blocks = j.value("main_blocks", d.main_blocks);
  c.look_back = j.value("look_back", d.look_back);
  c.look_ahead = j.value("look_ahead", d.look_ahead);
  c.state = ParseStatePolicy(j.value("state", ToString(d.state)));
  c.init = ParseInitPolicy(j.value("init", ToString(d.init)));
  c.max_step_outputs = j.value("max_step_outputs", d.max_step_outputs);
}

}  // namespace atisr
