// atisr/seq2seq/model.h

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

#ifndef ATISR_SEQ2SEQ_MODEL_H_
#define ATISR_SEQ2SEQ_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "atisr/corpus/vocabulary.h"
#include "atisr/network/attention.h"
#include "atisr/network/decoder.h"
#include "atisr/network/encoder.h"

namespace atisr {

/// Layer sizes. Defaults are the full-size recipe; the synthetic experiments
/// use narrower layers (see configs/).
struct ArchConfig {
  std::size_t feature_dim = 80;
  std::size_t projection_dim = 512;
  std::size_t encoder_hidden = 256;  // per direction
  std::size_t embedding_dim = 256;
  std::size_t decoder_hidden = 256;
  std::size_t attention_hidden = 128;
  ScorerKind scorer = ScorerKind::kMlp;

  std::size_t encoder_output_dim() const { return 2 * encoder_hidden; }
  friend bool operator==(const ArchConfig&, const ArchConfig&) = default;
};

void to_json(nlohmann::ordered_json& j, const ArchConfig& a);
void from_json(const nlohmann::ordered_json& j, ArchConfig& a);

/// Teacher (full utterance) or student (incremental, trained with </m>).
enum class ModelRole { kTeacher, kStudent };
std::string ToString(ModelRole role);
ModelRole ParseModelRole(const std::string& name);

/// Attention encoder-decoder. Copies share parameters; Clone() deep-copies.
class Seq2SeqModel {
 public:
  Seq2SeqModel() = default;
  /// Freshly initialized from `seed`.
  Seq2SeqModel(const ArchConfig& arch, Vocabulary vocab, std::uint64_t seed,
               ModelRole role = ModelRole::kTeacher);

  const ArchConfig& arch() const { return arch_; }
  const Vocabulary& vocab() const { return vocab_; }
  ModelRole role() const { return role_; }
  void set_role(ModelRole role) { role_ = role; }

  const EncoderStack& encoder() const { return encoder_; }
  const DecoderCell& decoder() const { return decoder_; }
  const AttentionScorer& scorer() const { return scorer_; }

  /// Every trainable tensor, in a fixed order with unique names.
  const ParameterList& parameters() const { return parameters_; }

  Seq2SeqModel Clone() const;
  /// Copies parameter values from `other` (same architecture).
  void CopyParametersFrom(const Seq2SeqModel& other);

  /// Training metadata embedded in the checkpoint manifest.
  nlohmann::ordered_json metadata;

 private:
  void CollectParameters();

  ArchConfig arch_;
  Vocabulary vocab_;
  ModelRole role_ = ModelRole::kTeacher;
  EncoderStack encoder_;
  DecoderCell decoder_;
  AttentionScorer scorer_;
  ParameterList parameters_;
};

// Checkpoint = <stem>.json manifest (version, architecture, vocabulary, role,
// metadata) + <stem>.bin tensor blob. The blob is "ATCK", a 32-bit format
// version and a 64-bit tensor count, then per tensor: name length and name
// bytes, rank, dims (all 64-bit little-endian unsigned) and row-major 32-bit
// little-endian IEEE-754 data.
inline constexpr std::uint32_t kCheckpointVersion = 1;

/// Paths of the two checkpoint files for `stem` (e.g. "ckpt/teacher").
std::filesystem::path CheckpointManifestPath(const std::filesystem::path& stem);
std::filesystem::path CheckpointBlobPath(const std::filesystem::path& stem);

/// Writes both files; returns the SHA-256 of the blob.
std::string SaveCheckpoint(const Seq2SeqModel& model, const std::filesystem::path& stem);
/// Throws IntegrityError naming the missing or malformed file.
Seq2SeqModel LoadCheckpoint(const std::filesystem::path& stem);
/// SHA-256 of the parameters as they would be serialized.
std::string ModelHash(const Seq2SeqModel& model);

}  // namespace atisr

#endif  // ATISR_SEQ2SEQ_MODEL_H_
