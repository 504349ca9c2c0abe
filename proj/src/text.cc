// src/text.cc

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

#include "edge/text.h"

#include <cctype>

namespace edge {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)); }
bool is_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)); }
bool is_word_char(char c) {
  return !is_space(c) && !is_punct(c);
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Splits one apostrophe-bearing word into host + clitic.
void push_word(std::string word, std::size_t offset, std::vector<Token> &out) {
  const auto apos = word.find('\'');
  if (apos == std::string::npos) {
    out.push_back({std::move(word), offset});
    return;
  }
  if (ends_with(word, "n't") && word.size() > 3 && apos == word.size() - 2) {
    const std::size_t cut = word.size() - 3;
    out.push_back({word.substr(0, cut), offset});
    out.push_back({word.substr(cut), offset + cut});
    return;
  }
  if (apos == 0 || word == "n't") {
    out.push_back({std::move(word), offset});
    return;
  }
  out.push_back({word.substr(0, apos), offset});
  out.push_back({word.substr(apos), offset + apos});
}

}  // namespace

std::string to_lower(std::string_view text) {
  std::string out(text);
  for (auto &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string trim(std::string_view text) {
  std::size_t b = 0, e = text.size();
  while (b < e && is_space(text[b])) ++b;
  while (e > b && is_space(text[e - 1])) --e;
  return std::string(text.substr(b, e - b));
}

std::vector<Token> tokenize_with_offsets(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const char c = text[i];
    if (is_space(c)) {
      ++i;
      continue;
    }
    if (is_word_char(c)) {
      const std::size_t start = i;
      std::string word;
      while (i < n) {
        const char d = text[i];
        if (is_word_char(d)) {
          word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(d))));
          ++i;
        } else if (d == '\'' && i + 1 < n && is_word_char(text[i + 1])) {
          word.push_back('\'');
          ++i;
        } else {
          break;
        }
      }
      push_word(std::move(word), start, out);
      continue;
    }
    // Leading apostrophe of a clitic written apart ("it 's").
    if (c == '\'' && i + 1 < n && is_word_char(text[i + 1])) {
      const std::size_t start = i;
      std::string word = "'";
      ++i;
      while (i < n && is_word_char(text[i])) {
        word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(text[i]))));
        ++i;
      }
      out.push_back({std::move(word), start});
      continue;
    }
    out.push_back({std::string(1, c), i});
    ++i;
  }
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  for (auto &t : tokenize_with_offsets(text)) out.push_back(std::move(t.text));
  return out;
}

std::string detokenize(const std::vector<std::string> &tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::string lemmatize(std::string_view token) {
  if (token.size() > 5 && ends_with(token, "ing"))
    return std::string(token.substr(0, token.size() - 3));
  if (token.size() > 4 && ends_with(token, "ed"))
    return std::string(token.substr(0, token.size() - 2));
  if (token.size() > 3 && ends_with(token, "s") && !ends_with(token, "ss"))
    return std::string(token.substr(0, token.size() - 1));
  return std::string(token);
}

bool is_punctuation(std::string_view token) {
  if (token.empty()) return false;
  for (char c : token)
    if (!is_punct(c)) return false;
  return true;
}

}  // namespace edge
