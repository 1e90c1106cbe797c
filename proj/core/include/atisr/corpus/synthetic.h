// atisr/corpus/synthetic.h

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

// Speech-like synthetic task: every character is a run of frames drawn around
// a per-character template vector.

#ifndef ATISR_CORPUS_SYNTHETIC_H_
#define ATISR_CORPUS_SYNTHETIC_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "atisr/corpus/dataset.h"
#include "atisr/corpus/vocabulary.h"

namespace atisr {

struct SyntheticSpec {
  std::size_t alphabet_size = 10;
  std::size_t min_chars = 30;
  std::size_t max_chars = 60;
  std::size_t min_frames_per_char = 8;
  std::size_t max_frames_per_char = 24;
  std::size_t feature_dim = 16;
  double noise = 0.4;
  // Adjacent repeats render as one indistinguishable run, so they are off by
  // default.
  bool allow_repeats = false;
  std::size_t train_size = 200;
  std::size_t dev_size = 50;
  std::size_t test_size = 50;
  std::uint64_t seed = 1;
};

void to_json(nlohmann::ordered_json& j, const SyntheticSpec& s);
void from_json(const nlohmann::ordered_json& j, SyntheticSpec& s);

struct SyntheticCorpus {
  Vocabulary vocabulary;
  // alphabet_size x feature_dim, row-major.
  std::vector<double> templates;
  Dataset train;
  Dataset dev;
  Dataset test;
};

/// Fully determined by `spec`. Throws GenerationError when the spec is
/// infeasible, including templates that cannot be kept more than 4 sigma
/// apart.
SyntheticCorpus GenerateSynthetic(const SyntheticSpec& spec);

/// Characters used for an alphabet of `n` symbols ("a", "b", ...).
std::vector<std::string> SyntheticAlphabet(std::size_t n);

}  // namespace atisr

#endif  // ATISR_CORPUS_SYNTHETIC_H_
