// src/sequence.cc

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

#include "edge/sequence.h"

#include <algorithm>

#include "edge/error.h"

namespace edge {

namespace {

TokenId speaker_token(Speaker s) {
  return s == Speaker::kA ? SpecialTokens::kSpeakerA : SpecialTokens::kSpeakerB;
}

std::vector<TokenId> encode_frames(const FrameSequence &frames, const Tokenizer &tokenizer) {
  std::vector<TokenId> ids;
  ids.reserve(frames.size());
  for (const auto &f : frames.frames) {
    auto id = tokenizer.frame_id(f.label());
    if (!id) throw Error("frame label not in vocabulary: " + f.label());
    ids.push_back(*id);
  }
  return ids;
}

// Shared builder. `response` is null for inference prompts.
EncodedExample assemble(const std::vector<Utterance> &context, const FrameSequence &frames,
                        Speaker responder, const std::vector<TokenId> *response,
                        const Tokenizer &tokenizer, const SequenceLimits &limits) {
  if (context.empty()) throw Error("context must contain at least one utterance");
  const auto frame_ids = encode_frames(frames, tokenizer);
  const std::size_t resp_len = response ? response->size() + 1 : 0;  // + <eos>
  // <bos> <bof> frames <bor> response <eos>
  const std::size_t fixed = 1 + 1 + frame_ids.size() + 1 + resp_len;
  if (fixed + 1 > limits.max_sequence_length)
    throw Error("frames and response alone exceed max_sequence_length (" +
                std::to_string(fixed) + " tokens)");

  std::vector<std::vector<TokenId>> blocks;
  for (const auto &u : context) blocks.push_back(tokenizer.encode(u.text));
  std::size_t first = 0;
  auto context_len = [&] {
    std::size_t n = 0;
    for (std::size_t i = first; i < blocks.size(); ++i) n += 1 + blocks[i].size();
    return n;
  };
  while (fixed + context_len() > limits.max_sequence_length && first + 1 < blocks.size()) ++first;
  const std::size_t total = fixed + context_len();
  if (total > limits.max_sequence_length) {
    // Left-truncate the single surviving utterance; its speaker tag stays.
    auto &b = blocks[first];
    const std::size_t excess = total - limits.max_sequence_length;
    b.erase(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(std::min(excess, b.size())));
  }

  EncodedExample ex;
  auto push = [&](TokenId tok, Speaker role, TokenId label) {
    ex.position_ids.push_back(static_cast<int>(ex.token_ids.size()));
    ex.token_ids.push_back(tok);
    ex.role_ids.push_back(static_cast<int>(role));
    ex.lm_labels.push_back(label);
  };
  push(SpecialTokens::kBos, context[first].speaker, kIgnoreLabel);
  for (std::size_t i = first; i < blocks.size(); ++i) {
    push(speaker_token(context[i].speaker), context[i].speaker, kIgnoreLabel);
    for (TokenId t : blocks[i]) push(t, context[i].speaker, kIgnoreLabel);
  }
  ex.bof_position = ex.token_ids.size();
  push(SpecialTokens::kBof, responder, kIgnoreLabel);
  for (TokenId t : frame_ids)
    push(t, responder, response && !limits.mask_frame_labels ? t : kIgnoreLabel);
  ex.bor_position = ex.token_ids.size();
  push(SpecialTokens::kBor, responder, kIgnoreLabel);
  if (response) {
    for (TokenId t : *response) push(t, responder, t);
    push(SpecialTokens::kEos, responder, SpecialTokens::kEos);
  }
  return ex;
}

}  // namespace

std::vector<TokenId> EncodedExample::frame_block() const {
  return {token_ids.begin() + static_cast<std::ptrdiff_t>(bof_position) + 1,
          token_ids.begin() + static_cast<std::ptrdiff_t>(bor_position)};
}

EncodedExample build_training_sequence(const std::vector<Utterance> &context,
                                       const FrameSequence &frames, const Utterance &response,
                                       const Tokenizer &tokenizer, const SequenceLimits &limits) {
  const auto resp = tokenizer.encode(response.text);
  return assemble(context, frames, response.speaker, &resp, tokenizer, limits);
}

EncodedExample build_training_sequence(const ContextResponsePair &pair, const FrameSequence &frames,
                                       const Tokenizer &tokenizer, const SequenceLimits &limits) {
  return build_training_sequence(pair.context, frames, pair.response, tokenizer, limits);
}

EncodedExample build_inference_prompt(const std::vector<Utterance> &context,
                                      const FrameSequence &frames, const Tokenizer &tokenizer,
                                      const SequenceLimits &limits) {
  if (context.empty()) throw Error("context must contain at least one utterance");
  return assemble(context, frames, other(context.back().speaker), nullptr, tokenizer, limits);
}

std::pair<EncodedExample, EncodedExample> build_classification_pair(
    const ContextResponsePair &pair, const FrameSequence &frames,
    const Utterance &distractor_response, const Tokenizer &tokenizer,
    const SequenceLimits &limits) {
  if (distractor_response.text == pair.response.text)
    throw Error("distractor response is identical to the gold response");
  // Both candidates get the same context budget so their prefixes match.
  const auto gold_resp = tokenizer.encode(pair.response.text);
  const auto wrong_resp = tokenizer.encode(distractor_response.text);
  const std::size_t longest = std::max(gold_resp.size(), wrong_resp.size());
  SequenceLimits gold_limits = limits, wrong_limits = limits;
  gold_limits.max_sequence_length -= longest - gold_resp.size();
  wrong_limits.max_sequence_length -= longest - wrong_resp.size();
  auto gold = assemble(pair.context, frames, pair.response.speaker, &gold_resp, tokenizer, gold_limits);
  auto wrong = assemble(pair.context, frames, pair.response.speaker, &wrong_resp, tokenizer, wrong_limits);
  gold.cls_label = ClassLabel::kCorrect;
  wrong.cls_label = ClassLabel::kDistractor;
  return {std::move(gold), std::move(wrong)};
}

}  // namespace edge
