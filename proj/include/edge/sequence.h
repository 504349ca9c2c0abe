// include/edge/sequence.h

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

#ifndef EDGE_SEQUENCE_H_
#define EDGE_SEQUENCE_H_

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "edge/corpus.h"
#include "edge/frames.h"
#include "edge/tokenizer.h"

namespace edge {

inline constexpr TokenId kIgnoreLabel = -100;

enum class ClassLabel { kCorrect, kDistractor };

/// One model input. Layout:
///   <bos> [<speaker> utterance]... <bof> frame... <bor> response... <eos>
/// lm_labels[i] is token_ids[i] on response and <eos> positions and
/// kIgnoreLabel elsewhere; the model predicts position i from position i-1.
struct EncodedExample {
  std::vector<TokenId> token_ids;
  std::vector<int> role_ids;  ///< Speaker value (0/1) of the block each position belongs to
  std::vector<int> position_ids;
  std::vector<TokenId> lm_labels;
  std::optional<ClassLabel> cls_label;
  std::size_t bof_position = 0;
  std::size_t bor_position = 0;

  std::size_t size() const { return token_ids.size(); }
  /// Read-out position for the next-utterance classifier (the final token).
  std::size_t cls_position() const { return token_ids.empty() ? 0 : token_ids.size() - 1; }
  /// Frame ids between <bof> and <bor>.
  std::vector<TokenId> frame_block() const;
};

struct SequenceLimits {
  std::size_t max_sequence_length = 256;
  /// Frame positions never carry LM labels when true (the default). When
  /// false they are labelled like response tokens.
  bool mask_frame_labels = true;
};

/// Builds the full training layout. Oldest context utterances are dropped
/// first, then the earliest surviving one is left-truncated; frames and
/// response are never cut. Throws when frames and response alone do not fit,
/// when the context is empty, or when a frame is not in the vocabulary.
EncodedExample build_training_sequence(const std::vector<Utterance> &context,
                                       const FrameSequence &frames, const Utterance &response,
                                       const Tokenizer &tokenizer, const SequenceLimits &limits);
EncodedExample build_training_sequence(const ContextResponsePair &pair, const FrameSequence &frames,
                                       const Tokenizer &tokenizer, const SequenceLimits &limits);

/// Same layout ending at <bor>, without labels. The responder takes the
/// role opposite to the last context speaker.
EncodedExample build_inference_prompt(const std::vector<Utterance> &context,
                                      const FrameSequence &frames, const Tokenizer &tokenizer,
                                      const SequenceLimits &limits);

/// Gold and distractor sequences sharing context and frames.
std::pair<EncodedExample, EncodedExample> build_classification_pair(
    const ContextResponsePair &pair, const FrameSequence &frames,
    const Utterance &distractor_response, const Tokenizer &tokenizer,
    const SequenceLimits &limits);

}  // namespace edge

#endif  // EDGE_SEQUENCE_H_
