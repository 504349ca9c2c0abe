// src/generation.cc

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

#include "edge/generation.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "edge/error.h"

namespace edge {

namespace {
constexpr double kSumTolerance = 1e-6;
constexpr double kMassEpsilon = 1e-12;
}  // namespace

void GenerationConfig::validate() const {
  if (!(top_p > 0.0 && top_p <= 1.0)) throw ConfigError("generation.top_p must be in (0, 1]");
  if (min_length < 1) throw ConfigError("generation.min_length must be >= 1");
  if (max_length < min_length) throw ConfigError("generation.max_length must be >= min_length");
  if (num_samples < 1) throw ConfigError("generation.num_samples must be >= 1");
}

std::vector<double> nucleus_filter(const std::vector<double> &probs, double p) {
  if (!(p > 0.0 && p <= 1.0)) throw Error("nucleus_filter: p must be in (0, 1]");
  double total = 0.0;
  for (double x : probs) {
    if (x < 0.0 || !std::isfinite(x)) throw Error("nucleus_filter: invalid probability");
    total += x;
  }
  if (std::abs(total - 1.0) > kSumTolerance)
    throw Error("nucleus_filter: distribution sums to " + std::to_string(total));

  std::vector<std::size_t> order(probs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return probs[a] > probs[b]; });
  std::size_t keep = 0;
  double mass = 0.0;
  while (keep < order.size()) {
    mass += probs[order[keep++]];
    if (mass >= p - kMassEpsilon) break;
  }
  const double boundary = probs[order[keep - 1]];
  while (keep < order.size() && probs[order[keep]] == boundary) mass += probs[order[keep++]];

  std::vector<double> out(probs.size(), 0.0);
  for (std::size_t i = 0; i < keep; ++i) out[order[i]] = probs[order[i]] / mass;
  return out;
}

std::size_t sample_index(const std::vector<double> &probs, Rng &rng) {
  const double u = rng.uniform();
  double cum = 0.0;
  std::size_t last = probs.size();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    last = i;
    cum += probs[i];
    if (u < cum) return i;
  }
  if (last == probs.size()) throw Error("sample_index: empty distribution");
  return last;  // rounding left u above the final cumulative sum
}

GeneratedResponse generate(const LanguageModel &backend, const Tokenizer &tokenizer,
                           const std::vector<Utterance> &context, const FrameSequence &frames,
                           const GenerationConfig &config, Rng &rng,
                           std::size_t max_sequence_length) {
  config.validate();
  for (const auto &f : frames.frames)
    if (!tokenizer.frame_id(f.label()))
      throw Error("frame label outside the checkpoint vocabulary: " + f.label());
  if (backend.vocab_size() != tokenizer.size())
    throw Error("generate: backend and tokenizer vocabularies differ");

  const std::size_t window = std::min(max_sequence_length, backend.max_context());
  if (window <= config.max_length)
    throw Error("generate: max_length leaves no room for the prompt in the context window");
  SequenceLimits limits;
  limits.max_sequence_length = window - config.max_length;
  EncodedExample ex = build_inference_prompt(context, frames, tokenizer, limits);
  const int role = ex.role_ids.back();

  GeneratedResponse out;
  out.frames = frames;
  for (const auto &u : context) out.context.push_back(u.text);

  const std::size_t V = tokenizer.size();
  std::vector<double> probs(V);
  while (out.token_ids.size() < config.max_length) {
    const auto logp = backend.next_token_log_probs(ex);
    const bool allow_eos = out.token_ids.size() >= config.min_length;
    double z = 0.0;
    for (std::size_t t = 0; t < V; ++t) {
      const auto id = static_cast<TokenId>(t);
      const bool ok = tokenizer.is_word(id) && id != SpecialTokens::kUnk;
      probs[t] = (ok || (allow_eos && id == SpecialTokens::kEos)) ? std::exp(logp[t]) : 0.0;
      z += probs[t];
    }
    if (!(z > 0.0)) throw Error("generate: no samplable token");
    for (double &x : probs) x /= z;
    const auto filtered = nucleus_filter(probs, config.top_p);
    const auto next = static_cast<TokenId>(sample_index(filtered, rng));
    if (next == SpecialTokens::kEos) break;
    out.token_ids.push_back(next);
    ex.token_ids.push_back(next);
    ex.role_ids.push_back(role);
    ex.position_ids.push_back(static_cast<int>(ex.position_ids.size()));
    ex.lm_labels.push_back(kIgnoreLabel);
  }
  out.text = tokenizer.decode(out.token_ids);
  return out;
}

std::vector<GeneratedResponse> generate_samples(const LanguageModel &backend,
                                                const Tokenizer &tokenizer,
                                                const std::vector<Utterance> &context,
                                                const FrameSequence &frames,
                                                const GenerationConfig &config,
                                                std::size_t max_sequence_length) {
  std::vector<GeneratedResponse> out;
  for (std::size_t i = 0; i < config.num_samples; ++i) {
    const auto seed = derive_seed(config.seed, i);
    Rng rng(seed);
    out.push_back(generate(backend, tokenizer, context, frames, config, rng, max_sequence_length));
    out.back().seed = seed;
  }
  return out;
}

std::map<std::string, std::vector<GeneratedResponse>> generate_controlled(
    const LanguageModel &backend, const Tokenizer &tokenizer, const ScamEmail &email,
    const std::vector<IntentExemplar> &exemplars, const GenerationConfig &config,
    std::size_t max_sequence_length) {
  if (exemplars.empty()) throw Error("generate_controlled: no exemplars");
  const std::vector<Utterance> context{{Speaker::kA, email.body}};
  std::map<std::string, std::vector<GeneratedResponse>> grouped;
  for (std::size_t i = 0; i < exemplars.size(); ++i) {
    const auto &ex = exemplars[i];
    const auto seed = derive_seed(config.seed, i);
    Rng rng(seed);
    auto r = generate(backend, tokenizer, context, ex.frames, config, rng, max_sequence_length);
    r.exemplar = ex.text;
    r.seed = seed;
    grouped[ex.intent].push_back(std::move(r));
  }
  return grouped;
}

}  // namespace edge
