// include/edge/tiny_gpt.h

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

#ifndef EDGE_TINY_GPT_H_
#define EDGE_TINY_GPT_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "edge/model.h"

namespace edge {

namespace detail {
struct KernelTable;
}  // namespace detail

enum class KernelBackend { kSerial, kParallel };

struct TinyGptConfig {
  std::size_t vocab_size = 0;
  std::size_t layers = 4;
  std::size_t dim = 128;
  std::size_t heads = 4;
  std::size_t max_context = 256;
  double init_std = 0.02;
  std::uint64_t seed = 0;
  KernelBackend kernels = KernelBackend::kParallel;
};

/// Small pre-LayerNorm decoder-only transformer trained from scratch.
/// Token, position and speaker-role embeddings are summed at the input; the
/// LM head is tied to the token embedding; a linear classifier on the final
/// hidden state at the read-out position scores candidate responses.
class TinyGpt : public LanguageModel {
 public:
  explicit TinyGpt(const TinyGptConfig &config);

  /// Restores a model from save_weights() output (the blob carries the shape).
  static std::unique_ptr<TinyGpt> from_weights(std::string_view blob,
                                               KernelBackend kernels = KernelBackend::kParallel);

  std::size_t vocab_size() const override { return config_.vocab_size; }
  std::size_t max_context() const override { return config_.max_context; }
  void resize_vocabulary(std::size_t extra) override;

  ForwardOutput forward(const EncodedExample &example) const override;
  std::vector<double> next_token_log_probs(const EncodedExample &example) const override;
  InstanceLosses accumulate_gradients(const TrainingInstance &instance, const LossWeights &weights,
                                      double scale) override;
  void apply_gradient_step(const OptimizerConfig &config) override;

  std::string save_weights() const override;
  void load_weights(std::string_view blob) override;
  bool reentrant() const override { return true; }

  const TinyGptConfig &config() const { return config_; }
  std::size_t parameter_count() const;

  /// Flat views over all parameters / gradients, in a fixed order. Used by
  /// the finite-difference gradient tests.
  std::vector<double *> parameter_pointers();
  std::vector<double> gradient_vector() const;
  void zero_gradients();

 private:
  struct Tensor {
    std::size_t rows = 0, cols = 0;
    std::vector<double> value, grad, m, v;
    void init(std::size_t r, std::size_t c);
  };
  struct Layer {
    Tensor ln1_g, ln1_b, w_qkv, b_qkv, w_o, b_o, ln2_g, ln2_b, w_fc, b_fc, w_proj, b_proj;
  };
  struct Activations;

  std::vector<Tensor *> tensors();
  std::vector<const Tensor *> tensors() const;
  void initialize();
  void run_forward(const EncodedExample &ex, Activations &act, bool all_logits) const;
  void run_backward(const EncodedExample &ex, const Activations &act,
                    const std::vector<double> &dlogits, double dcls);

  TinyGptConfig config_;
  const detail::KernelTable *kt_;
  Tensor tok_emb_, pos_emb_, role_emb_;
  std::vector<Layer> layers_;
  Tensor lnf_g_, lnf_b_, cls_w_, cls_b_;
  std::uint64_t step_ = 0;
};

}  // namespace edge

#endif  // EDGE_TINY_GPT_H_
