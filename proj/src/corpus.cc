// src/corpus.cc

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

#include "edge/corpus.h"

#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "edge/error.h"
#include "edge/text.h"

namespace edge {

namespace {

using nlohmann::json;

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Calls fn(line_number, parsed_object) for every non-blank JSONL line.
template <typename Fn>
void for_each_json_line(std::string_view content, const std::string &name, Fn &&fn) {
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error &e) {
      throw ParseError(name, lineno, std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) throw ParseError(name, lineno, "expected a JSON object");
    try {
      fn(lineno, obj);
    } catch (const json::exception &e) {
      throw ParseError(name, lineno, e.what());
    }
  }
}

}  // namespace

DialogueLoadResult parse_dialogues(std::string_view content, const std::string &name) {
  DialogueLoadResult result;
  for_each_json_line(content, name, [&](std::size_t lineno, const json &obj) {
    Dialogue d;
    d.id = obj.contains("id") ? obj.at("id").get<std::string>() : std::to_string(lineno);
    const auto &turns = obj.at("turns");
    if (!turns.is_array()) throw ParseError(name, lineno, "\"turns\" must be an array");
    for (const auto &t : turns) {
      const int spk = t.at("speaker").get<int>();
      if (spk != 0 && spk != 1) throw ParseError(name, lineno, "speaker must be 0 or 1");
      std::string text = to_lower(trim(t.at("text").get<std::string>()));
      if (text.empty()) throw ParseError(name, lineno, "empty utterance text");
      d.turns.push_back({static_cast<Speaker>(spk), std::move(text)});
    }
    if (d.turns.empty()) {
      ++result.skipped_empty;
      return;
    }
    result.dialogues.push_back(std::move(d));
  });
  return result;
}

DialogueLoadResult load_dialogues(const std::string &path) {
  return parse_dialogues(read_file(path), path);
}

std::vector<ContextResponsePair> build_pairs(const std::vector<Dialogue> &dialogues,
                                             const FrameExtractor &extractor) {
  std::vector<ContextResponsePair> pairs;
  for (const auto &d : dialogues) {
    for (std::size_t r = 1; r < d.turns.size(); ++r) {
      ContextResponsePair p;
      const std::size_t first = r > kMaxContextTurns ? r - kMaxContextTurns : 0;
      p.context.assign(d.turns.begin() + first, d.turns.begin() + r);
      p.response = d.turns[r];
      p.response_frames = extractor.extract(p.response.text);
      p.dialogue_id = d.id;
      p.response_turn = r;
      pairs.push_back(std::move(p));
    }
  }
  return pairs;
}

std::vector<ContextResponsePair> build_pairs(const std::vector<Dialogue> &dialogues,
                                             const FrameLexicon &lexicon) {
  return build_pairs(dialogues, LexiconFrameTagger(lexicon));
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    cur.push_back(c);
    const bool terminal = c == '.' || c == '!' || c == '?';
    if (terminal && (i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1])))) {
      auto s = trim(cur);
      if (!s.empty()) out.push_back(std::move(s));
      cur.clear();
    }
  }
  auto s = trim(cur);
  if (!s.empty()) out.push_back(std::move(s));
  return out;
}

ScamEmail preprocess_scam_email(std::string_view raw, std::string id) {
  static const std::regex kUrl(R"((https?://|www\.)[^\s]+)", std::regex::icase);
  static const std::regex kEmail(R"([A-Za-z0-9._%+-]+@[A-Za-z0-9-]+(\.[A-Za-z0-9-]+)+)");
  static const std::regex kSpaces(R"(\s+)");
  std::string text(raw);
  text = std::regex_replace(text, kUrl, " ");
  text = std::regex_replace(text, kEmail, " ");
  text = trim(std::regex_replace(text, kSpaces, " "));
  auto sentences = split_sentences(text);
  if (sentences.empty()) throw Error("scam email '" + id + "' is empty after cleaning");
  if (sentences.size() > 6) {
    std::vector<std::string> kept(sentences.begin(), sentences.begin() + 3);
    kept.insert(kept.end(), sentences.end() - 3, sentences.end());
    sentences = std::move(kept);
  }
  ScamEmail email;
  email.id = std::move(id);
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    if (i) email.body.push_back(' ');
    email.body += sentences[i];
  }
  return email;
}

std::vector<ScamEmail> load_scam_emails(const std::string &path) {
  std::vector<ScamEmail> emails;
  for_each_json_line(read_file(path), path, [&](std::size_t lineno, const json &obj) {
    std::string id = obj.contains("id") ? obj.at("id").get<std::string>() : std::to_string(lineno);
    try {
      ScamEmail e = preprocess_scam_email(obj.at("body").get<std::string>(), std::move(id));
      e.body = to_lower(e.body);
      emails.push_back(std::move(e));
    } catch (const ParseError &) {
      throw;
    } catch (const Error &e) {
      throw ParseError(path, lineno, e.what());
    }
  });
  return emails;
}

std::vector<IntentExemplar> load_exemplars(const std::string &path, const FrameExtractor &extractor) {
  std::vector<IntentExemplar> out;
  for_each_json_line(read_file(path), path, [&](std::size_t lineno, const json &obj) {
    IntentExemplar ex;
    ex.intent = trim(obj.at("intent").get<std::string>());
    ex.text = to_lower(trim(obj.at("text").get<std::string>()));
    if (ex.intent.empty()) throw ParseError(path, lineno, "empty intent");
    if (ex.text.empty()) throw ParseError(path, lineno, "empty exemplar text");
    ex.frames = extractor.extract(ex.text);
    out.push_back(std::move(ex));
  });
  return out;
}

}  // namespace edge
