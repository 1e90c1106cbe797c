// seq2seq/model.cc

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

#include "atisr/seq2seq/model.h"

#include <algorithm>
#include <set>

#include "atisr/error.h"
#include "atisr/util/binary_io.h"
#include "atisr/util/file.h"
#include "atisr/util/hash.h"

namespace atisr {

namespace fs = std::filesystem;

void to_json(nlohmann::ordered_json& j, const ArchConfig& a) {
  j = nlohmann::ordered_json{{"feature_dim", a.feature_dim},
                             {"projection_dim", a.projection_dim},
                             {"encoder_hidden", a.encoder_hidden},
                             {"embedding_dim", a.embedding_dim},
                             {"decoder_hidden", a.decoder_hidden},
                             {"attention_hidden", a.attention_hidden},
                             {"scorer", ToString(a.scorer)}};
}

void from_json(const nlohmann::ordered_json& j, ArchConfig& a) {
  ArchConfig d;
  a.feature_dim = j.value("feature_dim", d.feature_dim);
  a.projection_dim = j.value("projection_dim", d.projection_dim);
  a.encoder_hidden = j.value("encoder_hidden", d.encoder_hidden);
  a.embedding_dim = j.value("embedding_dim", d.embedding_dim);
  a.decoder_hidden = j.value("decoder_hidden", d.decoder_hidden);
  a.attention_hidden = j.value("attention_hidden", d.attention_hidden);
  a.scorer = ParseScorerKind(j.value("scorer", ToString(d.scorer)));
}

std::string ToString(ModelRole role) {
  return role == ModelRole::kTeacher ? "teacher" : "student";
}

ModelRole ParseModelRole(const std::string& name) {
  if (name == "teacher") return ModelRole::kTeacher;
  if (name == "student") return ModelRole::kStudent;
  throw ConfigurationError("unknown model role '" + name + "'");
}

Seq2SeqModel::Seq2SeqModel(const ArchConfig& arch, Vocabulary vocab, std::uint64_t seed,
                           ModelRole role)
    : arch_(arch), vocab_(std::move(vocab)), role_(role) {
  if (arch.feature_dim == 0 || arch.projection_dim == 0 || arch.encoder_hidden == 0 ||
      arch.embedding_dim == 0 || arch.decoder_hidden == 0 || arch.attention_hidden == 0) {
    throw ConfigurationError("all layer sizes must be positive");
  }
  Rng rng = Rng::Derive(seed, "model/init");
  encoder_ = EncoderStack(arch.feature_dim, arch.projection_dim, arch.encoder_hidden, rng);
  scorer_ = AttentionScorer(arch.scorer, arch.encoder_output_dim(), arch.decoder_hidden,
                            arch.attention_hidden, rng);
  decoder_ = DecoderCell(vocab_.size(), arch.embedding_dim, arch.decoder_hidden,
                         arch.encoder_output_dim(), rng);
  CollectParameters();
}

void Seq2SeqModel::CollectParameters() {
  parameters_.clear();
  encoder_.CollectParameters(parameters_);
  scorer_.CollectParameters(parameters_);
  decoder_.CollectParameters(parameters_);
  std::set<std::string> names;
  for (const auto& p : parameters_) {
    if (!names.insert(p.name).second) throw Error("duplicate parameter name " + p.name);
  }
}

Seq2SeqModel Seq2SeqModel::Clone() const {
  Seq2SeqModel copy(arch_, vocab_, 0, role_);
  copy.CopyParametersFrom(*this);
  copy.metadata = metadata;
  return copy;
}

void Seq2SeqModel::CopyParametersFrom(const Seq2SeqModel& other) {
  if (other.parameters_.size() != parameters_.size()) {
    throw ConfigurationError("cannot copy parameters between different architectures");
  }
  for (std::size_t i = 0; i < parameters_.size(); ++i) {
    const auto& src = other.parameters_[i];
    auto& dst = parameters_[i];
    if (src.name != dst.name || src.tensor.shape() != dst.tensor.shape()) {
      throw ConfigurationError("parameter mismatch at " + dst.name);
    }
    std::copy(src.tensor.data().begin(), src.tensor.data().end(),
              dst.tensor.node()->data.begin());
  }
}

fs::path CheckpointManifestPath(const fs::path& stem) {
  return fs::path(stem.string() + ".json");
}

fs::path CheckpointBlobPath(const fs::path& stem) { return fs::path(stem.string() + ".bin"); }

namespace {

std::string EncodeBlob(const Seq2SeqModel& model) {
  std::string out = "ATCK";
  binary::AppendLe<std::uint32_t>(out, kCheckpointVersion);
  binary::AppendLe<std::uint64_t>(out, model.parameters().size());
  for (const auto& p : model.parameters()) {
    binary::AppendLe<std::uint64_t>(out, p.name.size());
    out += p.name;
    const Shape& shape = p.tensor.shape();
    binary::AppendLe<std::uint64_t>(out, shape.size());
    for (std::size_t d : shape) binary::AppendLe<std::uint64_t>(out, d);
    for (double v : p.tensor.data()) binary::AppendLe<float>(out, static_cast<float>(v));
  }
  return out;
}

}  // namespace

std::string ModelHash(const Seq2SeqModel& model) { return Sha256Hex(EncodeBlob(model)); }

std::string SaveCheckpoint(const Seq2SeqModel& model, const fs::path& stem) {
  const std::string blob = EncodeBlob(model);
  const std::string hash = Sha256Hex(blob);
  nlohmann::ordered_json manifest;
  manifest["format"] = "atisr-checkpoint";
  manifest["version"] = kCheckpointVersion;
  manifest["role"] = ToString(model.role());
  manifest["architecture"] = model.arch();
  manifest["vocabulary"] = model.vocab().tokens();
  manifest["blob"] = CheckpointBlobPath(stem).filename().string();
  manifest["blob_sha256"] = hash;
  manifest["metadata"] = model.metadata.is_null() ? nlohmann::ordered_json::object() : model.metadata;
  WriteFileBytes(CheckpointBlobPath(stem), blob);
  WriteFileBytes(CheckpointManifestPath(stem), manifest.dump(2) + "\n");
  return hash;
}

Seq2SeqModel LoadCheckpoint(const fs::path& stem) {
  const fs::path manifest_path = CheckpointManifestPath(stem);
  const fs::path blob_path = CheckpointBlobPath(stem);
  if (!fs::exists(manifest_path)) {
    throw IntegrityError("checkpoint manifest " + manifest_path.string() + " does not exist");
  }
  if (!fs::exists(blob_path)) {
    throw IntegrityError("checkpoint blob " + blob_path.string() + " does not exist");
  }
  nlohmann::ordered_json manifest;
  try {
    manifest = nlohmann::ordered_json::parse(ReadFileBytes(manifest_path));
  } catch (const nlohmann::json::exception& e) {
    throw IntegrityError(manifest_path.string() + ": " + e.what());
  }
  if (manifest.value("version", 0u) != kCheckpointVersion) {
    throw IntegrityError(manifest_path.string() + ": unsupported checkpoint version");
  }
  auto tokens = manifest.at("vocabulary").get<std::vector<std::string>>();
  if (tokens.size() < static_cast<std::size_t>(kNumReserved)) {
    throw IntegrityError(manifest_path.string() + ": vocabulary lacks reserved tokens");
  }
  Vocabulary vocab = Vocabulary::FromCharacters(
      std::vector<std::string>(tokens.begin() + kNumReserved, tokens.end()));
  if (vocab.tokens() != tokens) {
    throw IntegrityError(manifest_path.string() + ": reserved tokens out of order");
  }
  Seq2SeqModel model(manifest.at("architecture").get<ArchConfig>(), std::move(vocab), 0,
                     ParseModelRole(manifest.value("role", std::string("teacher"))));
  model.metadata = manifest.value("metadata", nlohmann::ordered_json::object());

  const std::string blob = ReadFileBytes(blob_path);
  if (manifest.contains("blob_sha256") &&
      Sha256Hex(blob) != manifest["blob_sha256"].get<std::string>()) {
    throw IntegrityError(blob_path.string() + " does not match the digest in " +
                         manifest_path.string());
  }
  binary::Reader r(blob, blob_path.string());
  if (r.ReadBytes(4) != "ATCK") throw IntegrityError(blob_path.string() + ": bad magic");
  if (r.Read<std::uint32_t>() != kCheckpointVersion) {
    throw IntegrityError(blob_path.string() + ": unsupported blob version");
  }
  const auto count = r.Read<std::uint64_t>();
  if (count != model.parameters().size()) {
    throw IntegrityError(blob_path.string() + ": holds " + std::to_string(count) +
                         " tensors, architecture needs " +
                         std::to_string(model.parameters().size()));
  }
  for (const auto& p : model.parameters()) {
    const auto name_len = r.Read<std::uint64_t>();
    const std::string name(r.ReadBytes(name_len));
    if (name != p.name) {
      throw IntegrityError(blob_path.string() + ": expected tensor " + p.name + ", found " + name);
    }
    const auto rank = r.Read<std::uint64_t>();
    Shape shape(rank);
    for (auto& d : shape) d = r.Read<std::uint64_t>();
    if (shape != p.tensor.shape()) {
      throw IntegrityError(blob_path.string() + ": tensor " + name + " has shape " +
                           ShapeString(shape) + ", expected " + ShapeString(p.tensor.shape()));
    }
    auto data = p.tensor.node()->data.data();
    for (std::size_t i = 0; i < p.tensor.size(); ++i) data[i] = r.Read<float>();
  }
  if (r.remaining() != 0) throw IntegrityError(blob_path.string() + ": trailing bytes");
  return model;
}

}  // namespace atisr
