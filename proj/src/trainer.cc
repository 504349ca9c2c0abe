// src/trainer.cc

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

#include "edge/trainer.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "edge/error.h"

namespace edge {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_binary(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_binary(const fs::path &p, std::string_view data) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + p.string());
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw Error("write failed: " + p.string());
}

}  // namespace

void TrainingConfig::validate() const {
  if (!(learning_rate > 0.0)) throw ConfigError("train.learning_rate must be > 0");
  if (weight_decay < 0.0) throw ConfigError("train.weight_decay must be >= 0");
  if (batch_size < 1) throw ConfigError("train.batch_size must be >= 1");
  if (num_candidates < 2) throw ConfigError("train.num_candidates must be >= 2");
  if (max_epochs < 1) throw ConfigError("train.max_epochs must be >= 1");
  if (max_grad_norm < 0.0) throw ConfigError("train.max_grad_norm must be >= 0");
  if (lm_loss_weight < 0.0 || cls_loss_weight < 0.0)
    throw ConfigError("loss weights must be >= 0");
}

bool EarlyStopping::update(double val_loss) {
  ++epoch_;
  if (val_loss < best_) {
    best_ = val_loss;
    best_epoch_ = epoch_;
    stale_ = 0;
    return true;
  }
  ++stale_;
  return false;
}

json Checkpoint::manifest() const {
  return json{{"config", config},
              {"frame_vocab", frame_vocab},
              {"tokenizer_fingerprint", tokenizer_fingerprint},
              {"epoch", epoch},
              {"val_loss", val_loss}};
}

void save_checkpoint(const std::string &dir, const Checkpoint &checkpoint, const Tokenizer &tokenizer) {
  const fs::path root(dir);
  fs::create_directories(root / "weights");
  write_binary(root / "weights" / "model.bin", checkpoint.weights);
  write_binary(root / "weights" / "vocab.txt", tokenizer.serialize());
  write_binary(root / "manifest.json", checkpoint.manifest().dump(2) + "\n");
}

LoadedCheckpoint load_checkpoint(const std::string &dir) {
  const fs::path root(dir);
  json m;
  try {
    m = json::parse(read_binary(root / "manifest.json"));
  } catch (const json::exception &e) {
    throw Error("bad manifest in " + dir + ": " + e.what());
  }
  LoadedCheckpoint out{Checkpoint{}, Tokenizer::deserialize(read_binary(root / "weights" / "vocab.txt"))};
  auto &c = out.checkpoint;
  try {
    c.config = m.at("config");
    c.frame_vocab = m.at("frame_vocab").get<std::vector<std::string>>();
    c.tokenizer_fingerprint = m.at("tokenizer_fingerprint").get<std::string>();
    c.epoch = m.at("epoch").get<std::size_t>();
    c.val_loss = m.at("val_loss").get<double>();
  } catch (const json::exception &e) {
    throw Error("bad manifest in " + dir + ": " + e.what());
  }
  if (c.tokenizer_fingerprint != out.tokenizer.fingerprint())
    throw Error("checkpoint " + dir + ": vocabulary does not match manifest fingerprint");
  c.weights = read_binary(root / "weights" / "model.bin");
  return out;
}

Utterance sample_distractor(const std::vector<ContextResponsePair> &pairs, std::size_t gold_index,
                            Rng &rng) {
  if (gold_index >= pairs.size()) throw Error("gold index out of range");
  const auto &gold = pairs[gold_index].response.text;
  const bool any_other = std::any_of(pairs.begin(), pairs.end(),
                                     [&](const auto &p) { return p.response.text != gold; });
  if (!any_other) throw Error("cannot sample a distractor: every response equals the gold one");
  const std::size_t n = pairs.size();
  constexpr int kRetries = 64;
  for (int attempt = 0; attempt < kRetries; ++attempt) {
    std::size_t j = rng.uniform_int(n - 1);
    if (j >= gold_index) ++j;
    if (pairs[j].response.text != gold) return pairs[j].response;
  }
  // Heavily duplicated corpus: scan from a random start.
  const std::size_t start = rng.uniform_int(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto &p = pairs[(start + k) % n];
    if (p.response.text != gold) return p.response;
  }
  throw Error("unreachable: no distractor found");
}

double validate(const std::vector<ContextResponsePair> &pairs, const LanguageModel &backend,
                const Tokenizer &tokenizer, const SequenceLimits &limits) {
  if (pairs.empty()) throw Error("validate: no pairs");
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto &p : pairs) {
    EncodedExample ex;
    try {
      ex = build_training_sequence(p, p.response_frames, tokenizer, limits);
    } catch (const Error &) {
      continue;  // does not fit; excluded like in training
    }
    const auto out = backend.forward(ex);
    const auto [s, c] = sequence_nll(out, ex);
    sum += s;
    count += c;
  }
  if (count == 0) throw Error("validate: no scorable tokens");
  return sum / static_cast<double>(count);
}

TrainResult train(const TrainInputs &in, LanguageModel &backend, const TrainHooks &hooks) {
  if (!in.train || in.train->empty()) throw Error("train: empty training set");
  if (!in.tokenizer) throw Error("train: no tokenizer");
  in.config.validate();
  in.noise.validate();
  if (backend.vocab_size() != in.tokenizer->size())
    throw Error("train: backend vocabulary (" + std::to_string(backend.vocab_size()) +
                ") does not match tokenizer (" + std::to_string(in.tokenizer->size()) + ")");

  const auto &pairs = *in.train;
  const auto &valid = (in.valid && !in.valid->empty()) ? *in.valid : pairs;
  const auto &cfg = in.config;
  const LossWeights weights{cfg.lm_loss_weight, cfg.cls_loss_weight};
  auto opt = cfg.optimizer();
  const std::size_t steps_per_epoch = (pairs.size() + cfg.batch_size - 1) / cfg.batch_size;
  const double total_steps = static_cast<double>(steps_per_epoch * cfg.max_epochs);
  std::size_t step = 0;

  TrainResult result;
  EarlyStopping stopper(cfg.early_stop_patience);
  std::string best_weights;

  for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    Rng order_rng(derive_seed(cfg.seed, epoch));
    std::vector<std::size_t> order(pairs.size());
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[order_rng.uniform_int(i)]);

    Rng noise_rng(derive_seed(in.noise.seed, epoch));
    EpochStats stats;
    stats.epoch = epoch;
    double lm_sum = 0.0, cls_sum = 0.0;
    std::size_t used = 0, in_batch = 0;

    // Instances are built one batch ahead so the 1/batch scale is exact.
    std::vector<TrainingInstance> batch;
    auto flush = [&] {
      if (batch.empty()) return;
      const double scale = 1.0 / static_cast<double>(batch.size());
      for (const auto &inst : batch) {
        const auto l = backend.accumulate_gradients(inst, weights, scale);
        lm_sum += l.lm;
        cls_sum += l.cls;
        ++used;
      }
      if (cfg.linear_decay)
        opt.learning_rate =
            cfg.learning_rate * std::max(0.0, 1.0 - static_cast<double>(step) / total_steps);
      backend.apply_gradient_step(opt);
      ++step;
      batch.clear();
      in_batch = 0;
    };

    for (std::size_t idx : order) {
      const auto &pair = pairs[idx];
      const auto noised = noise(pair.response_frames, in.noise, in.frame_vocab, noise_rng);
      if (hooks.on_noised) hooks.on_noised(epoch, idx, noised);
      TrainingInstance inst;
      try {
        for (std::size_t c = 0; c + 1 < cfg.num_candidates; ++c) {
          const auto distractor = sample_distractor(pairs, idx, order_rng);
          auto [gold, wrong] =
              build_classification_pair(pair, noised, distractor, *in.tokenizer, in.limits);
          inst.candidates.push_back(std::move(wrong));
          if (c + 2 == cfg.num_candidates) inst.candidates.push_back(std::move(gold));
        }
      } catch (const Error &) {
        ++stats.rejected;
        continue;
      }
      inst.gold_index = inst.candidates.size() - 1;
      batch.push_back(std::move(inst));
      if (++in_batch == cfg.batch_size) flush();
    }
    flush();
    if (used == 0) throw Error("train: every example was rejected by the sequence limits");

    stats.train_lm_loss = lm_sum / static_cast<double>(used);
    stats.train_cls_loss = cls_sum / static_cast<double>(used);
    stats.val_loss = validate(valid, backend, *in.tokenizer, in.limits);
    result.history.push_back(stats);

    if (stopper.update(stats.val_loss)) {
      best_weights = backend.save_weights();
      result.best.epoch = epoch;
      result.best.val_loss = stats.val_loss;
    }
    if (stopper.should_stop()) break;
  }

  backend.load_weights(best_weights);
  result.best.weights = std::move(best_weights);
  result.best.config = in.config_snapshot;
  result.best.frame_vocab = in.frame_vocab;
  result.best.tokenizer_fingerprint = in.tokenizer->fingerprint();
  return result;
}

}  // namespace edge
