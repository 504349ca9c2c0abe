// src/tokenizer.cc

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

#include "edge/tokenizer.h"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <unordered_map>

#include "edge/error.h"
#include "edge/text.h"

namespace edge {

namespace {

constexpr const char *kSpecialNames[SpecialTokens::kCount] = {
    "<pad>", "<unk>", "<bos>", "<eos>", "<bof>", "<bor>", "<speaker_a>", "<speaker_b>"};
constexpr std::string_view kFramePrefix = "<frame:";

}  // namespace

std::string frame_token(const std::string &label) {
  return std::string(kFramePrefix) + label + ">";
}

Tokenizer::Tokenizer() {
  for (const char *name : kSpecialNames) push(name);
  first_frame_id_ = static_cast<TokenId>(tokens_.size());
}

void Tokenizer::push(std::string token) {
  const auto id = static_cast<TokenId>(tokens_.size());
  if (!index_.emplace(token, id).second) throw Error("duplicate token in vocabulary: " + token);
  tokens_.push_back(std::move(token));
}

Tokenizer Tokenizer::build(const std::vector<std::string> &texts, std::size_t min_count) {
  std::unordered_map<std::string, std::size_t> counts;
  for (const auto &t : texts)
    for (auto &w : tokenize(t)) ++counts[w];
  std::vector<std::pair<std::string, std::size_t>> sorted(counts.begin(), counts.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto &a, const auto &b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  Tokenizer tok;
  for (auto &[w, c] : sorted) {
    if (c < min_count) continue;
    if (w.starts_with('<') && w.size() > 1) continue;  // never shadow reserved names
    tok.push(w);
  }
  tok.first_frame_id_ = static_cast<TokenId>(tok.tokens_.size());
  return tok;
}

std::size_t Tokenizer::add_frames(const std::set<std::string> &labels) {
  std::size_t added = 0;
  for (const auto &l : labels) {
    auto t = frame_token(l);
    if (index_.count(t)) continue;
    push(std::move(t));
    ++added;
  }
  return added;
}

std::vector<TokenId> Tokenizer::encode(std::string_view text) const {
  std::vector<TokenId> ids;
  for (const auto &w : tokenize(text)) {
    auto it = index_.find(w);
    ids.push_back(it == index_.end() || !is_word(it->second) ? SpecialTokens::kUnk : it->second);
  }
  return ids;
}

std::string Tokenizer::decode(const std::vector<TokenId> &ids) const {
  std::vector<std::string> words;
  for (TokenId id : ids)
    if (is_word(id)) words.push_back(token(id));
  return detokenize(words);
}

std::optional<TokenId> Tokenizer::frame_id(const std::string &label) const {
  auto it = index_.find(frame_token(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> Tokenizer::frame_label(TokenId id) const {
  if (!is_frame(id) || static_cast<std::size_t>(id) >= tokens_.size()) return std::nullopt;
  const auto &t = tokens_[static_cast<std::size_t>(id)];
  return t.substr(kFramePrefix.size(), t.size() - kFramePrefix.size() - 1);
}

std::set<std::string> Tokenizer::frame_labels() const {
  std::set<std::string> out;
  for (auto id = first_frame_id_; id < static_cast<TokenId>(tokens_.size()); ++id)
    out.insert(*frame_label(id));
  return out;
}

std::string Tokenizer::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto &t : tokens_) {
    for (unsigned char c : t) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= 0xff;  // separator
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string Tokenizer::serialize() const {
  std::string out;
  for (const auto &t : tokens_) {
    out += t;
    out.push_back('\n');
  }
  return out;
}

Tokenizer Tokenizer::deserialize(std::string_view content) {
  std::istringstream in{std::string(content)};
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  if (lines.size() < SpecialTokens::kCount) throw Error("vocabulary file too short");
  for (std::size_t i = 0; i < SpecialTokens::kCount; ++i)
    if (lines[i] != kSpecialNames[i]) throw Error("vocabulary special tokens out of order");
  Tokenizer tok;
  bool in_frames = false;
  for (std::size_t i = SpecialTokens::kCount; i < lines.size(); ++i) {
    const bool is_frame = lines[i].starts_with(kFramePrefix);
    if (is_frame && !in_frames) {
      in_frames = true;
      tok.first_frame_id_ = static_cast<TokenId>(tok.tokens_.size());
    }
    if (!is_frame && in_frames) throw Error("word token after frame tokens in vocabulary");
    tok.push(lines[i]);
  }
  if (!in_frames) tok.first_frame_id_ = static_cast<TokenId>(tok.tokens_.size());
  return tok;
}

}  // namespace edge
