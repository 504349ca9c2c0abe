// include/edge/tokenizer.h

// Copyright 2026  The edge-dialogue authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EDGE_TOKENIZER_H_
#define EDGE_TOKENIZER_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace edge {

using TokenId = std::int32_t;

/// Reserved ids, identical in every vocabulary.
struct SpecialTokens {
  static constexpr TokenId kPad = 0;
  static constexpr TokenId kUnk = 1;
  static constexpr TokenId kBos = 2;
  static constexpr TokenId kEos = 3;
  static constexpr TokenId kBof = 4;  ///< begins the frame block
  static constexpr TokenId kBor = 5;  ///< begins the response
  static constexpr TokenId kSpeakerA = 6;
  static constexpr TokenId kSpeakerB = 7;
  static constexpr TokenId kCount = 8;
};

/// Word-level vocabulary: special tokens, then natural-language words, then
/// one atomic token per frame label ("<frame:FOOD>").
class Tokenizer {
 public:
  Tokenizer();

  /// Words sorted by descending frequency then lexicographically; words
  /// seen fewer than `min_count` times map to <unk>.
  static Tokenizer build(const std::vector<std::string> &texts, std::size_t min_count = 1);

  /// Appends frame tokens for every label not already present. Returns the
  /// number of ids added.
  std::size_t add_frames(const std::set<std::string> &labels);

  std::vector<TokenId> encode(std::string_view text) const;
  /// Natural-language tokens only; special and frame ids are skipped.
  std::string decode(const std::vector<TokenId> &ids) const;

  std::optional<TokenId> frame_id(const std::string &label) const;
  std::optional<std::string> frame_label(TokenId id) const;

  bool is_special(TokenId id) const { return id >= 0 && id < SpecialTokens::kCount; }
  bool is_frame(TokenId id) const { return id >= first_frame_id_; }
  bool is_word(TokenId id) const {
    return id >= SpecialTokens::kCount && id < first_frame_id_;
  }

  std::size_t size() const { return tokens_.size(); }
  std::size_t word_vocab_size() const { return static_cast<std::size_t>(first_frame_id_); }
  const std::string &token(TokenId id) const { return tokens_.at(static_cast<std::size_t>(id)); }
  const std::vector<std::string> &tokens() const { return tokens_; }
  std::set<std::string> frame_labels() const;

  /// FNV-1a 64 over the token list, as 16 hex digits.
  std::string fingerprint() const;

  /// One token per line; the first kCount lines are the special tokens.
  std::string serialize() const;
  static Tokenizer deserialize(std::string_view content);

 private:
  void push(std::string token);

  std::vector<std::string> tokens_;
  std::map<std::string, TokenId, std::less<>> index_;
  TokenId first_frame_id_;
};

std::string frame_token(const std::string &label);

}  // namespace edge

#endif  // EDGE_TOKENIZER_H_
