// include/edge/model.h

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

#ifndef EDGE_MODEL_H_
#define EDGE_MODEL_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "edge/sequence.h"

namespace edge {

/// Per-position next-token log-probabilities: row i scores the token at
/// position i+1. `cls_logit` is the classifier read-out at cls_position().
struct ForwardOutput {
  std::size_t length = 0;
  std::size_t vocab = 0;
  std::vector<double> log_probs;  ///< length x vocab, row-major
  double cls_logit = 0.0;

  std::span<const double> row(std::size_t i) const {
    return {log_probs.data() + i * vocab, vocab};
  }
};

/// One next-utterance classification problem: the gold candidate carries
/// the LM labels; the others are distractors sharing its prefix.
struct TrainingInstance {
  std::vector<EncodedExample> candidates;
  std::size_t gold_index = 0;
};

struct LossWeights {
  double lm = 1.0;
  double cls = 1.0;
};

struct InstanceLosses {
  double lm = 0.0;   ///< mean NLL over the gold candidate's labelled tokens
  double cls = 0.0;  ///< cross-entropy over candidates
  std::size_t lm_tokens = 0;
};

struct OptimizerConfig {
  double learning_rate = 6.25e-5;
  double weight_decay = 0.01;  ///< L2 penalty added to the gradient
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double max_grad_norm = 0.0;  ///< global L2 clip before the update; 0 disables
};

/// Adapter contract for the autoregressive LM behind training and
/// generation. Any backend (the built-in TinyGpt, a large pretrained model
/// behind a bridge, a test stub) implements this.
class LanguageModel {
 public:
  virtual ~LanguageModel() = default;

  virtual std::size_t vocab_size() const = 0;
  virtual std::size_t max_context() const = 0;

  /// Appends `extra` token rows; existing embeddings are preserved.
  virtual void resize_vocabulary(std::size_t extra) = 0;

  virtual ForwardOutput forward(const EncodedExample &example) const = 0;

  /// Log-probabilities for the token following the last position.
  virtual std::vector<double> next_token_log_probs(const EncodedExample &example) const {
    const auto out = forward(example);
    const auto r = out.row(out.length - 1);
    return {r.begin(), r.end()};
  }

  /// Adds scale * d(weights.lm * LM + weights.cls * CLS) to the gradient
  /// buffers and returns the unscaled losses.
  virtual InstanceLosses accumulate_gradients(const TrainingInstance &instance,
                                              const LossWeights &weights, double scale) = 0;

  /// One optimizer update from the accumulated gradients, which are then
  /// cleared.
  virtual void apply_gradient_step(const OptimizerConfig &config) = 0;

  /// Opaque weight blob; load_weights restores exactly what save_weights wrote.
  virtual std::string save_weights() const = 0;
  virtual void load_weights(std::string_view blob) = 0;

  /// True when forward() may be called concurrently.
  virtual bool reentrant() const { return false; }
};

/// Mean NLL over `example`'s labelled positions from a forward pass.
/// Returns {sum_nll, token_count}.
std::pair<double, std::size_t> sequence_nll(const ForwardOutput &out, const EncodedExample &example);

}  // namespace edge

#endif  // EDGE_MODEL_H_
