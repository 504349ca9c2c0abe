// include/edge/corpus.h

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

#ifndef EDGE_CORPUS_H_
#define EDGE_CORPUS_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "edge/frames.h"

namespace edge {

enum class Speaker { kA = 0, kB = 1 };

inline Speaker other(Speaker s) { return s == Speaker::kA ? Speaker::kB : Speaker::kA; }

struct Utterance {
  Speaker speaker = Speaker::kA;
  std::string text;
};

struct Dialogue {
  std::string id;
  std::vector<Utterance> turns;
};

/// Maximum number of history turns kept as context.
inline constexpr std::size_t kMaxContextTurns = 5;

struct ContextResponsePair {
  std::vector<Utterance> context;  ///< 1..kMaxContextTurns turns, oldest first
  Utterance response;
  FrameSequence response_frames;
  std::string dialogue_id;
  std::size_t response_turn = 0;  ///< 0-based index of the response in its dialogue
};

struct ScamEmail {
  std::string id;
  std::string body;
};

struct IntentExemplar {
  std::string intent;
  std::string text;
  FrameSequence frames;
};

struct DialogueLoadResult {
  std::vector<Dialogue> dialogues;
  std::size_t skipped_empty = 0;  ///< lines whose turns list was empty
};

/// JSONL: {"id": str, "turns": [{"speaker": 0|1, "text": str}, ...]} per line.
/// Text is lowercased at ingestion. Blank lines are ignored; a malformed line
/// throws ParseError naming it.
DialogueLoadResult load_dialogues(const std::string &path);
DialogueLoadResult parse_dialogues(std::string_view content, const std::string &name = "<memory>");

/// One pair per turn after the first, with a sliding window of at most
/// kMaxContextTurns preceding turns.
std::vector<ContextResponsePair> build_pairs(const std::vector<Dialogue> &dialogues,
                                             const FrameExtractor &extractor);
std::vector<ContextResponsePair> build_pairs(const std::vector<Dialogue> &dialogues,
                                             const FrameLexicon &lexicon);

/// Sentence split on '.', '!' or '?' followed by whitespace.
std::vector<std::string> split_sentences(std::string_view text);

/// Strips URLs and e-mail addresses, then keeps the first and last three
/// sentences when there are more than six. Throws if nothing is left.
ScamEmail preprocess_scam_email(std::string_view raw, std::string id = {});

/// JSONL {"id": str, "body": str}; bodies are preprocessed and lowercased.
std::vector<ScamEmail> load_scam_emails(const std::string &path);

/// JSONL {"intent": str, "text": str}; frames are extracted on load.
std::vector<IntentExemplar> load_exemplars(const std::string &path, const FrameExtractor &extractor);

}  // namespace edge

#endif  // EDGE_CORPUS_H_
