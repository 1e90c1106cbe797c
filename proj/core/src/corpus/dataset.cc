// corpus/dataset.cc

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

#include "atisr/corpus/dataset.h"

#include <fstream>
#include <sstream>

#include "atisr/error.h"
#include "atisr/util/binary_io.h"
#include "atisr/util/file.h"
#include "atisr/util/hash.h"

namespace atisr {

namespace fs = std::filesystem;

const Utterance* Dataset::Find(const std::string& id) const {
  for (const auto& u : utterances) {
    if (u.id == id) return &u;
  }
  return nullptr;
}

namespace {

std::string EncodeFeatures(const FeatureSequence& f) {
  if (f.values.size() != f.frames * f.dim) {
    throw DataError("feature sequence declares " + std::to_string(f.frames) + "x" +
                    std::to_string(f.dim) + " but holds " + std::to_string(f.values.size()) +
                    " values");
  }
  std::string out = "ATFX";
  binary::AppendLe<std::uint32_t>(out, kFeatureFileVersion);
  binary::AppendLe<std::uint32_t>(out, static_cast<std::uint32_t>(f.frames));
  binary::AppendLe<std::uint32_t>(out, static_cast<std::uint32_t>(f.dim));
  out.reserve(out.size() + f.values.size() * 4);
  for (float v : f.values) binary::AppendLe<float>(out, v);
  return out;
}

}  // namespace

void WriteFeatureFile(const fs::path& path, const FeatureSequence& features) {
  WriteFileBytes(path, EncodeFeatures(features));
}

FeatureSequence ReadFeatureFile(const fs::path& path) {
  const std::string bytes = ReadFileBytes(path);
  binary::Reader r(bytes, path.string());
  if (r.ReadBytes(4) != "ATFX") throw IntegrityError(path.string() + ": bad feature file magic");
  const auto version = r.Read<std::uint32_t>();
  if (version != kFeatureFileVersion) {
    throw IntegrityError(path.string() + ": unsupported feature file version " +
                         std::to_string(version));
  }
  FeatureSequence f;
  f.frames = r.Read<std::uint32_t>();
  f.dim = r.Read<std::uint32_t>();
  if (r.remaining() != f.frames * f.dim * 4) {
    throw IntegrityError(path.string() + ": expected " + std::to_string(f.frames * f.dim) +
                         " floats, file holds " + std::to_string(r.remaining()) + " bytes");
  }
  f.values.resize(f.frames * f.dim);
  for (float& v : f.values) v = r.Read<float>();
  return f;
}

void SaveDataset(const Dataset& dataset, const fs::path& manifest, const fs::path& feature_dir,
                 const nlohmann::ordered_json& header) {
  const fs::path base = manifest.has_parent_path() ? manifest.parent_path() : fs::path(".");
  const fs::path dir = feature_dir.is_absolute() ? feature_dir : base / feature_dir;
  fs::create_directories(dir);
  std::ostringstream os;
  if (!header.is_null()) {
    nlohmann::ordered_json rec;
    rec["header"] = header;
    os << rec.dump() << '\n';
  }
  for (const auto& u : dataset.utterances) {
    const std::string bytes = EncodeFeatures(u.features);
    const fs::path file = dir / (u.id + ".atfx");
    WriteFileBytes(file, bytes);
    nlohmann::ordered_json rec;
    rec["id"] = u.id;
    rec["feature_path"] = fs::relative(file, base).generic_string();
    rec["frames"] = u.features.frames;
    rec["dim"] = u.features.dim;
    rec["transcript"] = u.transcript;
    rec["sha256"] = Sha256Hex(bytes);
    os << rec.dump() << '\n';
  }
  WriteFileBytes(manifest, os.str());
}

LoadedDataset LoadDataset(const fs::path& manifest) {
  std::ifstream is(manifest);
  if (!is) throw IntegrityError("cannot open dataset manifest " + manifest.string());
  const fs::path base = manifest.has_parent_path() ? manifest.parent_path() : fs::path(".");
  LoadedDataset out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::ordered_json rec;
    try {
      rec = nlohmann::ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw IntegrityError(manifest.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (rec.contains("header")) {
      out.header = rec["header"];
      continue;
    }
    try {
      Utterance u;
      u.id = rec.at("id").get<std::string>();
      u.transcript = rec.at("transcript").get<std::string>();
      const fs::path file = base / rec.at("feature_path").get<std::string>();
      if (!fs::exists(file)) {
        throw IntegrityError("feature file " + file.string() + " referenced by " +
                             manifest.string() + " does not exist");
      }
      if (rec.contains("sha256")) {
        const std::string bytes = ReadFileBytes(file);
        if (Sha256Hex(bytes) != rec["sha256"].get<std::string>()) {
          throw IntegrityError("feature file " + file.string() + " does not match its digest");
        }
      }
      u.features = ReadFeatureFile(file);
      const auto frames = rec.at("frames").get<std::size_t>();
      const auto dim = rec.at("dim").get<std::size_t>();
      if (u.features.frames != frames || u.features.dim != dim) {
        throw IntegrityError("feature file " + file.string() + " holds " +
                             std::to_string(u.features.frames) + "x" +
                             std::to_string(u.features.dim) + ", manifest declares " +
                             std::to_string(frames) + "x" + std::to_string(dim));
      }
      if (u.features.frames == 0) {
        throw IntegrityError("feature file " + file.string() + " is empty");
      }
      out.dataset.utterances.push_back(std::move(u));
    } catch (const nlohmann::json::exception& e) {
      throw IntegrityError(manifest.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace atisr
