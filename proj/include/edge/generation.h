// include/edge/generation.h

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

#ifndef EDGE_GENERATION_H_
#define EDGE_GENERATION_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "edge/corpus.h"
#include "edge/frames.h"
#include "edge/model.h"
#include "edge/rng.h"
#include "edge/sequence.h"
#include "edge/tokenizer.h"

namespace edge {

struct GenerationConfig {
  double top_p = 0.9;
  std::size_t min_length = 4;
  std::size_t max_length = 50;
  std::size_t num_samples = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

struct GeneratedResponse {
  std::string text;
  std::vector<TokenId> token_ids;
  FrameSequence frames;  ///< conditioning frames
  std::optional<std::string> exemplar;
  std::vector<std::string> context;
  std::uint64_t seed = 0;
};

/// Top-p filter over a probability vector. Keeps the smallest
/// highest-probability prefix whose mass reaches p (plus every token tied
/// with the last one kept) and renormalizes. Throws if the input does not
/// sum to 1 within 1e-6 or p is outside (0, 1].
std::vector<double> nucleus_filter(const std::vector<double> &probs, double p);

/// Draws an index from a normalized distribution.
std::size_t sample_index(const std::vector<double> &probs, Rng &rng);

/// Samples one response for `context` under `frames`. Special and frame
/// tokens are never sampled; <eos> is suppressed until min_length words.
/// The prompt is truncated to leave room for max_length tokens.
GeneratedResponse generate(const LanguageModel &backend, const Tokenizer &tokenizer,
                           const std::vector<Utterance> &context, const FrameSequence &frames,
                           const GenerationConfig &config, Rng &rng,
                           std::size_t max_sequence_length = 256);

/// num_samples responses; sample i uses derive_seed(config.seed, i).
std::vector<GeneratedResponse> generate_samples(const LanguageModel &backend,
                                                const Tokenizer &tokenizer,
                                                const std::vector<Utterance> &context,
                                                const FrameSequence &frames,
                                                const GenerationConfig &config,
                                                std::size_t max_sequence_length = 256);

/// One response per exemplar, conditioned on its frames with the email body
/// as a single-utterance context, grouped by intent. Exemplar i is sampled
/// with derive_seed(config.seed, i).
std::map<std::string, std::vector<GeneratedResponse>> generate_controlled(
    const LanguageModel &backend, const Tokenizer &tokenizer, const ScamEmail &email,
    const std::vector<IntentExemplar> &exemplars, const GenerationConfig &config,
    std::size_t max_sequence_length = 256);

}  // namespace edge

#endif  // EDGE_GENERATION_H_
