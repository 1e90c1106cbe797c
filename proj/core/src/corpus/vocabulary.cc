// corpus/vocabulary.cc

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

#include "atisr/corpus/vocabulary.h"

#include <algorithm>
#include <fstream>
#include <set>

#include "atisr/error.h"

namespace atisr {

namespace {
const char* const kReserved[kNumReserved] = {"<pad>", "<s>", "</s>", "<m>",
                                             "</m>",  "<blank>", "<unk>"};
}  // namespace

std::vector<std::string> SplitCharacters(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto lead = static_cast<unsigned char>(text[i]);
    std::size_t len = 1;
    if (lead >= 0xF0) len = 4;
    else if (lead >= 0xE0) len = 3;
    else if (lead >= 0xC0) len = 2;
    len = std::min(len, text.size() - i);
    out.emplace_back(text.substr(i, len));
    i += len;
  }
  return out;
}

Vocabulary::Vocabulary() {
  for (const char* tok : kReserved) Append(tok);
}

Vocabulary Vocabulary::FromCharacters(const std::vector<std::string>& characters) {
  Vocabulary vocab;
  for (const auto& ch : characters) {
    if (vocab.Find(ch)) throw DataError("duplicate vocabulary entry '" + ch + "'");
    vocab.Append(ch);
  }
  return vocab;
}

Vocabulary Vocabulary::FromTranscripts(std::span<const std::string> transcripts) {
  std::set<std::string> chars;
  for (const auto& t : transcripts) {
    for (auto& ch : SplitCharacters(t)) chars.insert(std::move(ch));
  }
  return FromCharacters(std::vector<std::string>(chars.begin(), chars.end()));
}

void Vocabulary::Append(std::string token) {
  index_.emplace(token, static_cast<TokenId>(tokens_.size()));
  tokens_.push_back(std::move(token));
}

const std::string& Vocabulary::Token(TokenId id) const {
  if (!Contains(id)) throw DataError("token id " + std::to_string(id) + " outside vocabulary");
  return tokens_[static_cast<std::size_t>(id)];
}

std::optional<TokenId> Vocabulary::Find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

TokenSequence Vocabulary::Encode(std::string_view text, std::size_t* unknown) const {
  TokenSequence ids;
  for (const auto& ch : SplitCharacters(text)) {
    auto id = Find(ch);
    if (id && !IsSpecial(*id)) {
      ids.push_back(*id);
    } else {
      ids.push_back(kUnkId);
      if (unknown) ++*unknown;
    }
  }
  return ids;
}

std::string Vocabulary::Decode(std::span<const TokenId> ids) const {
  std::string out;
  for (TokenId id : ids) {
    if (!IsSpecial(id)) out += Token(id);
  }
  return out;
}

void Vocabulary::Save(const std::filesystem::path& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IntegrityError("cannot write vocabulary " + path.string());
  for (const auto& tok : tokens_) os << tok << '\n';
}

Vocabulary Vocabulary::Load(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IntegrityError("cannot read vocabulary " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(is, line)) lines.push_back(line);
  if (lines.size() < static_cast<std::size_t>(kNumReserved)) {
    throw IntegrityError("vocabulary " + path.string() + " is missing reserved tokens");
  }
  for (TokenId i = 0; i < kNumReserved; ++i) {
    if (lines[static_cast<std::size_t>(i)] != kReserved[i]) {
      throw IntegrityError("vocabulary " + path.string() + " line " + std::to_string(i + 1) +
                           " should be " + kReserved[i]);
    }
  }
  return FromCharacters(std::vector<std::string>(lines.begin() + kNumReserved, lines.end()));
}

}  // namespace atisr
