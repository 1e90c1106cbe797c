// atisr/corpus/dataset.h

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

#ifndef ATISR_CORPUS_DATASET_H_
#define ATISR_CORPUS_DATASET_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace atisr {

/// Framed speech features, frames x dim, row-major. Stored in 32-bit so the
/// in-memory and on-disk forms are bit-identical.
struct FeatureSequence {
  std::size_t frames = 0;
  std::size_t dim = 0;
  std::vector<float> values;

  float at(std::size_t frame, std::size_t d) const { return values[frame * dim + d]; }
  friend bool operator==(const FeatureSequence&, const FeatureSequence&) = default;
};

struct Utterance {
  std::string id;
  FeatureSequence features;
  std::string transcript;
  friend bool operator==(const Utterance&, const Utterance&) = default;
};

struct Dataset {
  std::vector<Utterance> utterances;

  bool empty() const { return utterances.empty(); }
  std::size_t size() const { return utterances.size(); }
  const Utterance* Find(const std::string& id) const;
  friend bool operator==(const Dataset&, const Dataset&) = default;
};

// Feature file: "ATFX", then version, frame count and dim as 32-bit
// little-endian unsigned, then row-major 32-bit little-endian floats.
inline constexpr std::uint32_t kFeatureFileVersion = 1;
void WriteFeatureFile(const std::filesystem::path& path, const FeatureSequence& features);
FeatureSequence ReadFeatureFile(const std::filesystem::path& path);

/// Writes one feature file per utterance under `feature_dir` (relative paths
/// are resolved against the manifest's directory) and a line-delimited
/// manifest. A non-null `header` is written as the first record
/// {"header": ...} for provenance.
void SaveDataset(const Dataset& dataset, const std::filesystem::path& manifest,
                 const std::filesystem::path& feature_dir,
                 const nlohmann::ordered_json& header = nullptr);

struct LoadedDataset {
  Dataset dataset;
  nlohmann::ordered_json header;  // null when the manifest has none
};

/// Loads and verifies every feature file against the declared shape and
/// digest. Throws IntegrityError naming the offending file.
LoadedDataset LoadDataset(const std::filesystem::path& manifest);

}  // namespace atisr

#endif  // ATISR_CORPUS_DATASET_H_
