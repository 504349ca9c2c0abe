// include/edge/text.h

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

#ifndef EDGE_TEXT_H_
#define EDGE_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace edge {

/// ASCII lowercase; bytes outside ASCII are passed through untouched.
std::string to_lower(std::string_view text);

std::string trim(std::string_view text);

/// A token plus the byte offset where it starts in the source text.
struct Token {
  std::string text;
  std::size_t offset = 0;
};

/// The tokenizer shared by frame extraction, the LM vocabulary, Dist-n and
/// BLEU. Rules:
///   - lowercase, then split on whitespace;
///   - every ASCII punctuation character other than an in-word apostrophe
///     becomes its own token;
///   - "n't" is split off its host ("don't" -> "do" "n't"), and other
///     clitics split at the apostrophe ("it's" -> "it" "'s").
std::vector<Token> tokenize_with_offsets(std::string_view text);
std::vector<std::string> tokenize(std::string_view text);

/// Tokens joined by single spaces.
std::string detokenize(const std::vector<std::string> &tokens);

/// Suffix-stripping lemmatizer used before lexicon lookup:
/// -ing (word length > 5), -ed (length > 4), -s but not -ss (length > 3).
/// Only the first applicable rule fires.
std::string lemmatize(std::string_view token);

bool is_punctuation(std::string_view token);

}  // namespace edge

#endif  // EDGE_TEXT_H_
