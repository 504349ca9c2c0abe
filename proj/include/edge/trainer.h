// include/edge/trainer.h

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

#ifndef EDGE_TRAINER_H_
#define EDGE_TRAINER_H_

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "edge/corpus.h"
#include "edge/model.h"
#include "edge/noising.h"
#include "edge/rng.h"
#include "edge/sequence.h"
#include "edge/tiny_gpt.h"
#include "edge/tokenizer.h"

namespace edge {

struct TrainingConfig {
  double learning_rate = 6.25e-5;
  double weight_decay = 0.01;
  std::size_t batch_size = 2;
  std::size_t max_epochs = 10;
  std::size_t num_candidates = 2;
  double lm_loss_weight = 1.0;
  double cls_loss_weight = 1.0;
  std::size_t early_stop_patience = 2;
  double max_grad_norm = 0.0;  ///< 0 disables clipping
  bool linear_decay = false;  ///< learning rate falls linearly to 0 over max_epochs
  std::uint64_t seed = 0;

  void validate() const;
  OptimizerConfig optimizer() const {
    OptimizerConfig o;
    o.learning_rate = learning_rate;
    o.weight_decay = weight_decay;
    o.max_grad_norm = max_grad_norm;
    return o;
  }
};

/// Tracks validation loss across epochs. An epoch improves when its loss is
/// strictly below the best so far; training stops once `patience`
/// consecutive epochs fail to improve.
class EarlyStopping {
 public:
  explicit EarlyStopping(std::size_t patience) : patience_(patience) {}

  /// Records the loss of the next epoch (1-based). Returns true if it is the
  /// new best.
  bool update(double val_loss);
  bool should_stop() const { return stale_ >= patience_; }
  std::size_t best_epoch() const { return best_epoch_; }
  double best_loss() const { return best_; }

 private:
  std::size_t patience_;
  std::size_t epoch_ = 0;
  std::size_t best_epoch_ = 0;
  std::size_t stale_ = 0;
  double best_ = std::numeric_limits<double>::infinity();
};

struct Checkpoint {
  std::string weights;  ///< backend-opaque blob
  nlohmann::json config = nlohmann::json::object();
  std::vector<std::string> frame_vocab;
  std::string tokenizer_fingerprint;
  std::size_t epoch = 0;
  double val_loss = 0.0;

  nlohmann::json manifest() const;
};

/// Writes `dir/weights/model.bin`, `dir/weights/vocab.txt` and
/// `dir/manifest.json`, creating directories as needed.
void save_checkpoint(const std::string &dir, const Checkpoint &checkpoint, const Tokenizer &tokenizer);

struct LoadedCheckpoint {
  Checkpoint checkpoint;
  Tokenizer tokenizer;
};
/// Reads a checkpoint directory and verifies the tokenizer fingerprint.
LoadedCheckpoint load_checkpoint(const std::string &dir);

struct EpochStats {
  std::size_t epoch = 0;  ///< 1-based
  double train_lm_loss = 0.0;
  double train_cls_loss = 0.0;
  double val_loss = 0.0;
  std::size_t rejected = 0;  ///< examples that did not fit max_sequence_length
};

struct TrainResult {
  Checkpoint best;
  std::vector<EpochStats> history;
};

struct TrainHooks {
  /// Called with (epoch, pair index, noised frames) for every example.
  std::function<void(std::size_t, std::size_t, const FrameSequence &)> on_noised;
};

struct TrainInputs {
  const std::vector<ContextResponsePair> *train = nullptr;
  const std::vector<ContextResponsePair> *valid = nullptr;  ///< falls back to train when empty
  std::vector<std::string> frame_vocab;                     ///< noising pool, sorted
  const Tokenizer *tokenizer = nullptr;
  SequenceLimits limits;
  NoisingConfig noise;
  TrainingConfig config;
  nlohmann::json config_snapshot = nlohmann::json::object();
};

/// Joint LM + next-utterance-classification fine-tuning with per-epoch
/// re-noised gold frames and early stopping on validation LM loss. The
/// backend is left holding the best weights.
TrainResult train(const TrainInputs &inputs, LanguageModel &backend, const TrainHooks &hooks = {});

/// Uniform draw from the other pairs' responses, never textually equal to
/// the gold response.
Utterance sample_distractor(const std::vector<ContextResponsePair> &pairs, std::size_t gold_index,
                            Rng &rng);

/// Mean per-token NLL over response (+ <eos>) positions with the un-noised
/// gold frames.
double validate(const std::vector<ContextResponsePair> &pairs, const LanguageModel &backend,
                const Tokenizer &tokenizer, const SequenceLimits &limits);

}  // namespace edge

#endif  // EDGE_TRAINER_H_
