// atisr/corpus/vocabulary.h

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

#ifndef ATISR_CORPUS_VOCABULARY_H_
#define ATISR_CORPUS_VOCABULARY_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace atisr {

using TokenId = std::int32_t;
using TokenSequence = std::vector<TokenId>;

// Reserved ids, fixed for every vocabulary.
inline constexpr TokenId kPadId = 0;
inline constexpr TokenId kBosId = 1;         // <s>
inline constexpr TokenId kEosId = 2;         // </s>
inline constexpr TokenId kBlockBeginId = 3;  // <m>
inline constexpr TokenId kBlockEndId = 4;    // </m>
inline constexpr TokenId kBlankId = 5;       // <blank>
inline constexpr TokenId kUnkId = 6;         // <unk>
inline constexpr TokenId kNumReserved = 7;

/// Splits UTF-8 text into code points, each returned as its byte string.
std::vector<std::string> SplitCharacters(std::string_view text);

class Vocabulary {
 public:
  /// Reserved tokens only.
  Vocabulary();
  /// Reserved tokens followed by `characters` in the given order.
  static Vocabulary FromCharacters(const std::vector<std::string>& characters);
  /// Sorted set of characters occurring in `transcripts`.
  static Vocabulary FromTranscripts(std::span<const std::string> transcripts);

  std::size_t size() const { return tokens_.size(); }
  const std::string& Token(TokenId id) const;
  const std::vector<std::string>& tokens() const { return tokens_; }
  std::optional<TokenId> Find(std::string_view token) const;
  bool Contains(TokenId id) const { return id >= 0 && static_cast<std::size_t>(id) < size(); }

  static bool IsSpecial(TokenId id) { return id >= 0 && id < kNumReserved; }

  /// Characters outside the vocabulary map to <unk>; their count is added to
  /// `unknown` when given.
  TokenSequence Encode(std::string_view text, std::size_t* unknown = nullptr) const;
  /// Concatenates non-special tokens.
  std::string Decode(std::span<const TokenId> ids) const;

  /// One token per line, in id order.
  void Save(const std::filesystem::path& path) const;
  static Vocabulary Load(const std::filesystem::path& path);

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.tokens_ == b.tokens_;
  }

 private:
  void Append(std::string token);
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> index_;
};

}  // namespace atisr

#endif  // ATISR_CORPUS_VOCABULARY_H_
