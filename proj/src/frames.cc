// src/frames.cc

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

#include "edge/frames.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "edge/error.h"
#include "edge/text.h"

namespace edge {

namespace {

constexpr const char *kWhWords[] = {"why", "how", "what", "who", "when", "where", "which"};
constexpr const char *kPolarity[] = {"yes", "no"};
constexpr const char *kPronouns[] = {"i", "you", "he", "she", "it", "we", "they"};

std::string to_upper(std::string_view s) {
  std::string out(s);
  for (auto &c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

std::string join_range(const std::vector<std::string> &words, std::size_t b, std::size_t e) {
  std::string out;
  for (std::size_t i = b; i < e; ++i) {
    if (i > b) out.push_back(' ');
    out += words[i];
  }
  return out;
}

}  // namespace

Frame::Frame(std::string_view label) {
  const std::string t = trim(label);
  if (t.empty()) throw Error("frame label must be non-empty");
  label_ = to_upper(t);
}

std::vector<std::string> FrameSequence::labels() const {
  std::vector<std::string> out;
  out.reserve(frames.size());
  for (const auto &f : frames) out.push_back(f.label());
  return out;
}

std::set<std::string> FrameSequence::label_set() const {
  std::set<std::string> out;
  for (const auto &f : frames) out.insert(f.label());
  return out;
}

FrameSequence FrameSequence::from_labels(const std::vector<std::string> &labels) {
  FrameSequence seq;
  for (const auto &l : labels) seq.frames.emplace_back(l);
  return seq;
}

FrameLexicon::FrameLexicon() {
  for (const char *w : kWhWords) augmented_[w] = AugmentedKind::kWhWord;
  for (const char *w : kPolarity) augmented_[w] = AugmentedKind::kPolarity;
  for (const char *w : kPronouns) augmented_[w] = AugmentedKind::kPronoun;
  augmented_["?"] = AugmentedKind::kQuestionMark;
}

void FrameLexicon::add(std::string_view lexical_unit, std::string_view frame) {
  const auto words = tokenize(lexical_unit);
  if (words.empty()) throw Error("empty lexical unit");
  Frame f(frame);
  auto &slot = entries_[join_range(words, 0, words.size())];
  if (std::find(slot.begin(), slot.end(), f) == slot.end()) slot.push_back(std::move(f));
  max_words_ = std::max(max_words_, words.size());
}

const std::vector<Frame> *FrameLexicon::find(const std::string &key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<AugmentedKind> FrameLexicon::augmented_kind(const std::string &token) const {
  auto it = augmented_.find(token);
  if (it == augmented_.end()) return std::nullopt;
  return it->second;
}

FrameLexicon parse_lexicon(std::string_view content, const std::string &name) {
  FrameLexicon lex;
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line.front() == '#') continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    for (;;) {
      auto tab = line.find('\t', start);
      cols.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (cols.size() != 2)
      throw ParseError(name, lineno,
                       "expected 2 tab-separated columns, got " + std::to_string(cols.size()));
    if (trim(cols[0]).empty() || trim(cols[1]).empty())
      throw ParseError(name, lineno, "empty lexical unit or frame label");
    lex.add(cols[0], cols[1]);
  }
  if (lex.size() == 0) throw ParseError(name, 0, "lexicon has no entries");
  return lex;
}

FrameLexicon load_lexicon(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open lexicon file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_lexicon(ss.str(), path);
}

std::set<std::string> frame_vocabulary(const FrameLexicon &lexicon) {
  std::set<std::string> vocab;
  for (const auto &[unit, frames] : lexicon.entries())
    for (const auto &f : frames) vocab.insert(f.label());
  for (const auto &[token, kind] : lexicon.augmented()) vocab.insert(Frame(token).label());
  return vocab;
}

std::vector<FrameMention> LexiconFrameTagger::tag(std::string_view text) const {
  const auto toks = tokenize_with_offsets(text);
  const std::size_t n = toks.size();
  std::vector<std::string> surface(n), lemma(n);
  for (std::size_t i = 0; i < n; ++i) {
    surface[i] = toks[i].text;
    lemma[i] = lemmatize(toks[i].text);
  }

  // Augmented tokens that fire at this position. Yes/no only fire as a
  // standalone answer particle (followed by punctuation or end of text), so
  // the determiner in "no one" stays silent.
  std::vector<bool> fires(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    auto kind = lexicon_->augmented_kind(surface[i]);
    if (!kind) continue;
    switch (*kind) {
      case AugmentedKind::kWhWord:
      case AugmentedKind::kQuestionMark:
        fires[i] = true;
        break;
      case AugmentedKind::kPolarity:
        fires[i] = i + 1 == n || is_punctuation(surface[i + 1]);
        break;
      case AugmentedKind::kPronoun:
        fires[i] = options_.emit_pronouns;
        break;
    }
  }

  struct Span {
    std::size_t begin, len;
    const Frame *frame;
  };
  std::vector<Span> candidates;
  const std::size_t maxw = lexicon_->max_unit_words();
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t len = 1; len <= maxw && b + len <= n; ++len) {
      if (fires[b + len - 1]) break;
      const std::size_t e = b + len;
      // Surface form first, then with the head (last) word lemmatized,
      // then fully lemmatized.
      std::vector<std::string> keys;
      keys.push_back(join_range(surface, b, e));
      std::vector<std::string> mixed(surface.begin() + b, surface.begin() + e);
      mixed.back() = lemma[e - 1];
      keys.push_back(join_range(mixed, 0, mixed.size()));
      keys.push_back(join_range(lemma, b, e));
      for (const auto &key : keys) {
        if (const auto *frames = lexicon_->find(key)) {
          candidates.push_back({b, len, &frames->front()});
          break;
        }
      }
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const Span &a, const Span &b) {
    if (a.len != b.len) return a.len > b.len;
    return a.begin < b.begin;
  });

  std::vector<bool> taken(n, false);
  std::vector<FrameMention> mentions;
  for (std::size_t i = 0; i < n; ++i) {
    if (fires[i]) {
      taken[i] = true;
      mentions.push_back({Frame(surface[i]), i, i + 1, toks[i].offset});
    }
  }
  for (const auto &c : candidates) {
    bool free = true;
    for (std::size_t i = c.begin; i < c.begin + c.len; ++i) free = free && !taken[i];
    if (!free) continue;
    for (std::size_t i = c.begin; i < c.begin + c.len; ++i) taken[i] = true;
    mentions.push_back({*c.frame, c.begin, c.begin + c.len, toks[c.begin].offset});
  }
  std::sort(mentions.begin(), mentions.end(),
            [](const FrameMention &a, const FrameMention &b) { return a.token_begin < b.token_begin; });
  return mentions;
}

FrameSequence LexiconFrameTagger::extract(std::string_view text) const {
  FrameSequence seq;
  for (auto &m : tag(text)) seq.frames.push_back(std::move(m.frame));
  seq.source_text = std::string(text);
  return seq;
}

FrameSequence extract_frames(std::string_view text, const FrameLexicon &lexicon,
                             TaggerOptions options) {
  return LexiconFrameTagger(lexicon, options).extract(text);
}

}  // namespace edge
