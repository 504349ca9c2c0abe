// src/tiny_gpt.cc

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

#include "edge/tiny_gpt.h"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "edge/error.h"
#include "edge/kernels.h"
#include "edge/rng.h"

namespace edge {

namespace {

constexpr char kMagic[8] = {'E', 'D', 'G', 'E', 'T', 'G', 'P', 'T'};
constexpr std::uint32_t kFormatVersion = 1;

void log_softmax_inplace(std::span<double> row) {
  double mx = -INFINITY;
  for (double v : row) mx = std::max(mx, v);
  double z = 0.0;
  for (double v : row) z += std::exp(v - mx);
  const double lz = mx + std::log(z);
  for (double &v : row) v -= lz;
}

class BlobWriter {
 public:
  template <typename T>
  void put(const T &v) {
    const auto *p = reinterpret_cast<const char *>(&v);
    out_.append(p, sizeof(T));
  }
  void put_doubles(const std::vector<double> &v) {
    out_.append(reinterpret_cast<const char *>(v.data()), v.size() * sizeof(double));
  }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class BlobReader {
 public:
  explicit BlobReader(std::string_view in) : in_(in) {}
  template <typename T>
  T get() {
    T v;
    need(sizeof(T));
    std::memcpy(&v, in_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return v;
  }
  void get_doubles(std::vector<double> &v) {
    need(v.size() * sizeof(double));
    std::memcpy(v.data(), in_.data() + pos_, v.size() * sizeof(double));
    pos_ += v.size() * sizeof(double);
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  void need(std::size_t n) const {
    if (pos_ + n > in_.size()) throw Error("truncated model weights");
  }
  std::string_view in_;
  std::size_t pos_ = 0;
};

}  // namespace

namespace detail {

struct KernelTable {
  decltype(&kernels::serial::linear) linear;
  decltype(&kernels::serial::linear_grad_input) linear_grad_input;
  decltype(&kernels::serial::linear_grad_weight) linear_grad_weight;
  decltype(&kernels::serial::layernorm) layernorm;
  decltype(&kernels::serial::layernorm_backward) layernorm_backward;
  decltype(&kernels::serial::attention) attention;
  decltype(&kernels::serial::attention_backward) attention_backward;
  decltype(&kernels::serial::gelu) gelu;
  decltype(&kernels::serial::gelu_backward) gelu_backward;
};

}  // namespace detail

struct TinyGpt::Activations {
  struct LayerActs {
    std::vector<double> x_in, ln1, ln1_mean, ln1_rstd, qkv, probs, attn, x_mid, ln2, ln2_mean,
        ln2_rstd, fc_pre, fc_act;
  };
  std::size_t n = 0;
  std::vector<LayerActs> layers;
  std::vector<double> x_final, lnf, lnf_mean, lnf_rstd, logits;
  double cls_logit = 0.0;
};

namespace {

const detail::KernelTable kSerialTable{
    &kernels::serial::linear,    &kernels::serial::linear_grad_input,
    &kernels::serial::linear_grad_weight, &kernels::serial::layernorm,
    &kernels::serial::layernorm_backward, &kernels::serial::attention,
    &kernels::serial::attention_backward, &kernels::serial::gelu,
    &kernels::serial::gelu_backward};

const detail::KernelTable kParallelTable{
    &kernels::omp::linear,    &kernels::omp::linear_grad_input,
    &kernels::omp::linear_grad_weight, &kernels::omp::layernorm,
    &kernels::omp::layernorm_backward, &kernels::omp::attention,
    &kernels::omp::attention_backward, &kernels::omp::gelu,
    &kernels::omp::gelu_backward};

const detail::KernelTable *kernel_table(KernelBackend backend) {
  return backend == KernelBackend::kSerial ? &kSerialTable : &kParallelTable;
}

}  // namespace

void TinyGpt::Tensor::init(std::size_t r, std::size_t c) {
  rows = r;
  cols = c;
  value.assign(r * c, 0.0);
  grad.assign(r * c, 0.0);
  m.assign(r * c, 0.0);
  v.assign(r * c, 0.0);
}

TinyGpt::TinyGpt(const TinyGptConfig &config) : config_(config), kt_(kernel_table(config.kernels)) {
  if (config_.vocab_size == 0) throw Error("TinyGpt: vocab_size must be > 0");
  if (config_.heads == 0 || config_.dim % config_.heads != 0)
    throw Error("TinyGpt: dim must be divisible by heads");
  if (config_.layers == 0 || config_.max_context == 0) throw Error("TinyGpt: empty architecture");
  const std::size_t d = config_.dim;
  tok_emb_.init(config_.vocab_size, d);
  pos_emb_.init(config_.max_context, d);
  role_emb_.init(2, d);
  layers_.resize(config_.layers);
  for (auto &l : layers_) {
    l.ln1_g.init(1, d);
    l.ln1_b.init(1, d);
    l.w_qkv.init(3 * d, d);
    l.b_qkv.init(1, 3 * d);
    l.w_o.init(d, d);
    l.b_o.init(1, d);
    l.ln2_g.init(1, d);
    l.ln2_b.init(1, d);
    l.w_fc.init(4 * d, d);
    l.b_fc.init(1, 4 * d);
    l.w_proj.init(d, 4 * d);
    l.b_proj.init(1, d);
  }
  lnf_g_.init(1, d);
  lnf_b_.init(1, d);
  cls_w_.init(1, d);
  cls_b_.init(1, 1);
  initialize();
}

void TinyGpt::initialize() {
  Rng rng(config_.seed);
  const double std = config_.init_std;
  const double resid_std = std / std::sqrt(2.0 * static_cast<double>(config_.layers));
  auto normal = [&](Tensor &t, double s) {
    for (auto &x : t.value) x = rng.normal() * s;
  };
  auto ones = [](Tensor &t) { std::fill(t.value.begin(), t.value.end(), 1.0); };
  normal(tok_emb_, std);
  normal(pos_emb_, std);
  normal(role_emb_, std);
  for (auto &l : layers_) {
    ones(l.ln1_g);
    ones(l.ln2_g);
    normal(l.w_qkv, std);
    normal(l.w_o, resid_std);
    normal(l.w_fc, std);
    normal(l.w_proj, resid_std);
  }
  ones(lnf_g_);
  normal(cls_w_, std);
}

std::vector<TinyGpt::Tensor *> TinyGpt::tensors() {
  std::vector<Tensor *> out{&tok_emb_, &pos_emb_, &role_emb_};
  for (auto &l : layers_)
    for (Tensor *t : {&l.ln1_g, &l.ln1_b, &l.w_qkv, &l.b_qkv, &l.w_o, &l.b_o, &l.ln2_g, &l.ln2_b,
                      &l.w_fc, &l.b_fc, &l.w_proj, &l.b_proj})
      out.push_back(t);
  for (Tensor *t : {&lnf_g_, &lnf_b_, &cls_w_, &cls_b_}) out.push_back(t);
  return out;
}

std::vector<const TinyGpt::Tensor *> TinyGpt::tensors() const {
  auto mut = const_cast<TinyGpt *>(this)->tensors();
  return {mut.begin(), mut.end()};
}

std::size_t TinyGpt::parameter_count() const {
  std::size_t n = 0;
  for (const auto *t : tensors()) n += t->value.size();
  return n;
}

std::vector<double *> TinyGpt::parameter_pointers() {
  std::vector<double *> out;
  for (auto *t : tensors())
    for (auto &x : t->value) out.push_back(&x);
  return out;
}

std::vector<double> TinyGpt::gradient_vector() const {
  std::vector<double> out;
  for (const auto *t : tensors()) out.insert(out.end(), t->grad.begin(), t->grad.end());
  return out;
}

void TinyGpt::zero_gradients() {
  for (auto *t : tensors()) std::fill(t->grad.begin(), t->grad.end(), 0.0);
}

void TinyGpt::resize_vocabulary(std::size_t extra) {
  if (extra == 0) return;
  const std::size_t d = config_.dim;
  const std::size_t old = config_.vocab_size;
  Rng rng(derive_seed(config_.seed, old));
  tok_emb_.rows += extra;
  tok_emb_.value.resize(tok_emb_.rows * d);
  for (std::size_t i = old * d; i < tok_emb_.value.size(); ++i)
    tok_emb_.value[i] = rng.normal() * config_.init_std;
  tok_emb_.grad.resize(tok_emb_.rows * d, 0.0);
  tok_emb_.m.resize(tok_emb_.rows * d, 0.0);
  tok_emb_.v.resize(tok_emb_.rows * d, 0.0);
  config_.vocab_size += extra;
}

void TinyGpt::run_forward(const EncodedExample &ex, Activations &act, bool all_logits) const {
  const std::size_t n = ex.size();
  const std::size_t d = config_.dim;
  const std::size_t V = config_.vocab_size;
  const std::size_t H = config_.heads;
  if (n == 0) throw Error("TinyGpt: empty input");
  if (n > config_.max_context)
    throw Error("TinyGpt: sequence length " + std::to_string(n) + " exceeds context " +
                std::to_string(config_.max_context));
  act.n = n;
  std::vector<double> x(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    const auto tok = ex.token_ids[i];
    const auto pos = ex.position_ids[i];
    const auto role = ex.role_ids[i];
    if (tok < 0 || static_cast<std::size_t>(tok) >= V) throw Error("TinyGpt: token id out of range");
    if (pos < 0 || static_cast<std::size_t>(pos) >= config_.max_context)
      throw Error("TinyGpt: position id out of range");
    if (role < 0 || role > 1) throw Error("TinyGpt: role id out of range");
    for (std::size_t c = 0; c < d; ++c)
      x[i * d + c] = tok_emb_.value[tok * d + c] + pos_emb_.value[pos * d + c] +
                     role_emb_.value[role * d + c];
  }

  act.layers.resize(layers_.size());
  for (std::size_t li = 0; li < layers_.size(); ++li) {
    const Layer &L = layers_[li];
    auto &a = act.layers[li];
    a.x_in = std::move(x);
    a.ln1.resize(n * d);
    a.ln1_mean.resize(n);
    a.ln1_rstd.resize(n);
    kt_->layernorm(a.x_in, L.ln1_g.value, L.ln1_b.value, n, d, a.ln1, a.ln1_mean, a.ln1_rstd);
    a.qkv.resize(n * 3 * d);
    kt_->linear(a.ln1, L.w_qkv.value, L.b_qkv.value, n, d, 3 * d, a.qkv);
    a.probs.resize(H * n * n);
    a.attn.resize(n * d);
    kt_->attention(a.qkv, n, d, H, a.probs, a.attn);
    a.x_mid.resize(n * d);
    kt_->linear(a.attn, L.w_o.value, L.b_o.value, n, d, d, a.x_mid);
    for (std::size_t i = 0; i < n * d; ++i) a.x_mid[i] += a.x_in[i];
    a.ln2.resize(n * d);
    a.ln2_mean.resize(n);
    a.ln2_rstd.resize(n);
    kt_->layernorm(a.x_mid, L.ln2_g.value, L.ln2_b.value, n, d, a.ln2, a.ln2_mean, a.ln2_rstd);
    a.fc_pre.resize(n * 4 * d);
    kt_->linear(a.ln2, L.w_fc.value, L.b_fc.value, n, d, 4 * d, a.fc_pre);
    a.fc_act.resize(n * 4 * d);
    kt_->gelu(a.fc_pre, a.fc_act);
    x.assign(n * d, 0.0);
    kt_->linear(a.fc_act, L.w_proj.value, L.b_proj.value, n, 4 * d, d, x);
    for (std::size_t i = 0; i < n * d; ++i) x[i] += a.x_mid[i];
  }
  act.x_final = std::move(x);
  act.lnf.resize(n * d);
  act.lnf_mean.resize(n);
  act.lnf_rstd.resize(n);
  kt_->layernorm(act.x_final, lnf_g_.value, lnf_b_.value, n, d, act.lnf, act.lnf_mean, act.lnf_rstd);

  if (all_logits) {
    act.logits.resize(n * V);
    kt_->linear(act.lnf, tok_emb_.value, {}, n, d, V, act.logits);
  } else {
    act.logits.resize(V);
    kt_->linear(std::span<const double>(act.lnf).subspan((n - 1) * d, d), tok_emb_.value, {}, 1, d,
                V, act.logits);
  }
  const std::size_t cp = ex.cls_position();
  double s = cls_b_.value[0];
  for (std::size_t c = 0; c < d; ++c) s += cls_w_.value[c] * act.lnf[cp * d + c];
  act.cls_logit = s;
}

ForwardOutput TinyGpt::forward(const EncodedExample &example) const {
  Activations act;
  run_forward(example, act, true);
  ForwardOutput out;
  out.length = act.n;
  out.vocab = config_.vocab_size;
  out.log_probs = std::move(act.logits);
  for (std::size_t i = 0; i < out.length; ++i)
    log_softmax_inplace(std::span<double>(out.log_probs).subspan(i * out.vocab, out.vocab));
  out.cls_logit = act.cls_logit;
  return out;
}

std::vector<double> TinyGpt::next_token_log_probs(const EncodedExample &example) const {
  Activations act;
  run_forward(example, act, false);
  log_softmax_inplace(act.logits);
  return std::move(act.logits);
}

void TinyGpt::run_backward(const EncodedExample &ex, const Activations &act,
                           const std::vector<double> &dlogits, double dcls) {
  const std::size_t n = act.n;
  const std::size_t d = config_.dim;
  const std::size_t V = config_.vocab_size;
  const std::size_t H = config_.heads;

  std::vector<double> dlnf(n * d, 0.0);
  if (!dlogits.empty()) {
    kt_->linear_grad_input(dlogits, tok_emb_.value, n, d, V, dlnf);
    kt_->linear_grad_weight(dlogits, act.lnf, n, d, V, tok_emb_.grad, {});
  }
  if (dcls != 0.0) {
    const std::size_t cp = ex.cls_position();
    for (std::size_t c = 0; c < d; ++c) {
      dlnf[cp * d + c] += dcls * cls_w_.value[c];
      cls_w_.grad[c] += dcls * act.lnf[cp * d + c];
    }
    cls_b_.grad[0] += dcls;
  }
  std::vector<double> dx(n * d), tmp(n * d);
  kt_->layernorm_backward(dlnf, act.x_final, act.lnf_mean, act.lnf_rstd, lnf_g_.value, n, d, dx,
                          lnf_g_.grad, lnf_b_.grad);

  std::vector<double> d4(n * 4 * d), d4b(n * 4 * d), d3(n * 3 * d), dattn(n * d);
  for (std::size_t li = layers_.size(); li-- > 0;) {
    Layer &L = layers_[li];
    const auto &a = act.layers[li];
    // x_out = x_mid + fc_act * w_proj^T
    kt_->linear_grad_input(dx, L.w_proj.value, n, 4 * d, d, d4);
    kt_->linear_grad_weight(dx, a.fc_act, n, 4 * d, d, L.w_proj.grad, L.b_proj.grad);
    kt_->gelu_backward(d4, a.fc_pre, d4b);
    kt_->linear_grad_input(d4b, L.w_fc.value, n, d, 4 * d, tmp);
    kt_->linear_grad_weight(d4b, a.ln2, n, d, 4 * d, L.w_fc.grad, L.b_fc.grad);
    std::vector<double> dmid(n * d);
    kt_->layernorm_backward(tmp, a.x_mid, a.ln2_mean, a.ln2_rstd, L.ln2_g.value, n, d, dmid,
                            L.ln2_g.grad, L.ln2_b.grad);
    for (std::size_t i = 0; i < n * d; ++i) dmid[i] += dx[i];
    // x_mid = x_in + attn * w_o^T
    kt_->linear_grad_input(dmid, L.w_o.value, n, d, d, dattn);
    kt_->linear_grad_weight(dmid, a.attn, n, d, d, L.w_o.grad, L.b_o.grad);
    kt_->attention_backward(dattn, a.qkv, a.probs, n, d, H, d3);
    kt_->linear_grad_input(d3, L.w_qkv.value, n, d, 3 * d, tmp);
    kt_->linear_grad_weight(d3, a.ln1, n, d, 3 * d, L.w_qkv.grad, L.b_qkv.grad);
    kt_->layernorm_backward(tmp, a.x_in, a.ln1_mean, a.ln1_rstd, L.ln1_g.value, n, d, dx,
                            L.ln1_g.grad, L.ln1_b.grad);
    for (std::size_t i = 0; i < n * d; ++i) dx[i] += dmid[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto tok = static_cast<std::size_t>(ex.token_ids[i]);
    const auto pos = static_cast<std::size_t>(ex.position_ids[i]);
    const auto role = static_cast<std::size_t>(ex.role_ids[i]);
    for (std::size_t c = 0; c < d; ++c) {
      tok_emb_.grad[tok * d + c] += dx[i * d + c];
      pos_emb_.grad[pos * d + c] += dx[i * d + c];
      role_emb_.grad[role * d + c] += dx[i * d + c];
    }
  }
}

InstanceLosses TinyGpt::accumulate_gradients(const TrainingInstance &instance,
                                             const LossWeights &weights, double scale) {
  const auto &cands = instance.candidates;
  if (cands.empty() || instance.gold_index >= cands.size())
    throw Error("TinyGpt: training instance without a gold candidate");
  const std::size_t V = config_.vocab_size;
  const bool use_cls = weights.cls != 0.0 && cands.size() > 1;

  std::vector<Activations> acts(cands.size());
  for (std::size_t c = 0; c < cands.size(); ++c) {
    if (c != instance.gold_index && !use_cls) continue;
    run_forward(cands[c], acts[c], c == instance.gold_index);
  }

  InstanceLosses losses;
  std::vector<double> dcls(cands.size(), 0.0);
  if (use_cls) {
    double mx = -INFINITY;
    for (std::size_t c = 0; c < cands.size(); ++c) mx = std::max(mx, acts[c].cls_logit);
    double z = 0.0;
    for (std::size_t c = 0; c < cands.size(); ++c) z += std::exp(acts[c].cls_logit - mx);
    for (std::size_t c = 0; c < cands.size(); ++c) {
      const double p = std::exp(acts[c].cls_logit - mx) / z;
      dcls[c] = (p - (c == instance.gold_index ? 1.0 : 0.0)) * weights.cls * scale;
    }
    losses.cls = -(acts[instance.gold_index].cls_logit - mx - std::log(z));
  }

  const auto &gold = cands[instance.gold_index];
  auto &gact = acts[instance.gold_index];
  std::vector<double> dlogits;
  std::size_t count = 0;
  for (std::size_t i = 1; i < gold.size(); ++i)
    if (gold.lm_labels[i] != kIgnoreLabel) ++count;
  if (count > 0 && weights.lm != 0.0) {
    dlogits.assign(gact.n * V, 0.0);
    const double g = weights.lm * scale / static_cast<double>(count);
    double nll = 0.0;
    for (std::size_t i = 1; i < gold.size(); ++i) {
      const auto label = gold.lm_labels[i];
      if (label == kIgnoreLabel) continue;
      std::span<double> row(gact.logits.data() + (i - 1) * V, V);
      std::vector<double> lp(row.begin(), row.end());
      log_softmax_inplace(lp);
      nll -= lp[static_cast<std::size_t>(label)];
      double *dr = dlogits.data() + (i - 1) * V;
      for (std::size_t k = 0; k < V; ++k) dr[k] = std::exp(lp[k]) * g;
      dr[label] -= g;
    }
    losses.lm = nll / static_cast<double>(count);
    losses.lm_tokens = count;
  }

  for (std::size_t c = 0; c < cands.size(); ++c) {
    if (c == instance.gold_index)
      run_backward(cands[c], acts[c], dlogits, dcls[c]);
    else if (use_cls)
      run_backward(cands[c], acts[c], {}, dcls[c]);
  }
  return losses;
}

void TinyGpt::apply_gradient_step(const OptimizerConfig &opt) {
  ++step_;
  const double bc1 = 1.0 - std::pow(opt.beta1, static_cast<double>(step_));
  const double bc2 = 1.0 - std::pow(opt.beta2, static_cast<double>(step_));
  double clip = 1.0;
  if (opt.max_grad_norm > 0.0) {
    double sq = 0.0;
    for (const auto *t : tensors())
      for (double g : t->grad) sq += g * g;
    const double norm = std::sqrt(sq);
    if (norm > opt.max_grad_norm) clip = opt.max_grad_norm / norm;
  }
  for (auto *t : tensors()) {
    for (std::size_t i = 0; i < t->value.size(); ++i) {
      const double g = clip * t->grad[i] + opt.weight_decay * t->value[i];
      t->m[i] = opt.beta1 * t->m[i] + (1.0 - opt.beta1) * g;
      t->v[i] = opt.beta2 * t->v[i] + (1.0 - opt.beta2) * g * g;
      const double mhat = t->m[i] / bc1;
      const double vhat = t->v[i] / bc2;
      t->value[i] -= opt.learning_rate * mhat / (std::sqrt(vhat) + opt.epsilon);
      t->grad[i] = 0.0;
    }
  }
}

std::string TinyGpt::save_weights() const {
  BlobWriter w;
  for (char c : kMagic) w.put(c);
  w.put(kFormatVersion);
  for (std::uint64_t v : {config_.vocab_size, config_.layers, config_.dim, config_.heads,
                          config_.max_context, static_cast<std::size_t>(config_.seed)})
    w.put(v);
  w.put(config_.init_std);
  w.put(step_);
  for (const auto *t : tensors()) {
    w.put(static_cast<std::uint64_t>(t->rows));
    w.put(static_cast<std::uint64_t>(t->cols));
    w.put_doubles(t->value);
  }
  return w.take();
}

void TinyGpt::load_weights(std::string_view blob) {
  BlobReader r(blob);
  for (char c : kMagic)
    if (r.get<char>() != c) throw Error("not a TinyGpt weight blob");
  if (r.get<std::uint32_t>() != kFormatVersion) throw Error("unsupported TinyGpt weight version");
  const auto vocab = r.get<std::uint64_t>();
  const auto layers = r.get<std::uint64_t>();
  const auto dim = r.get<std::uint64_t>();
  const auto heads = r.get<std::uint64_t>();
  const auto ctx = r.get<std::uint64_t>();
  r.get<std::uint64_t>();  // seed
  r.get<double>();         // init_std
  if (vocab != config_.vocab_size || layers != config_.layers || dim != config_.dim ||
      heads != config_.heads || ctx != config_.max_context)
    throw Error("TinyGpt weight blob shape does not match this model");
  step_ = r.get<std::uint64_t>();
  for (auto *t : tensors()) {
    if (r.get<std::uint64_t>() != t->rows || r.get<std::uint64_t>() != t->cols)
      throw Error("TinyGpt weight blob tensor shape mismatch");
    r.get_doubles(t->value);
    std::fill(t->grad.begin(), t->grad.end(), 0.0);
    std::fill(t->m.begin(), t->m.end(), 0.0);
    std::fill(t->v.begin(), t->v.end(), 0.0);
  }
  if (!r.done()) throw Error("trailing bytes in TinyGpt weight blob");
}

std::unique_ptr<TinyGpt> TinyGpt::from_weights(std::string_view blob, KernelBackend kernels) {
  BlobReader r(blob);
  for (char c : kMagic)
    if (r.get<char>() != c) throw Error("not a TinyGpt weight blob");
  if (r.get<std::uint32_t>() != kFormatVersion) throw Error("unsupported TinyGpt weight version");
  TinyGptConfig cfg;
  cfg.vocab_size = r.get<std::uint64_t>();
  cfg.layers = r.get<std::uint64_t>();
  cfg.dim = r.get<std::uint64_t>();
  cfg.heads = r.get<std::uint64_t>();
  cfg.max_context = r.get<std::uint64_t>();
  cfg.seed = r.get<std::uint64_t>();
  cfg.init_std = r.get<double>();
  cfg.kernels = kernels;
  auto model = std::make_unique<TinyGpt>(cfg);
  model->load_weights(blob);
  return model;
}

std::pair<double, std::size_t> sequence_nll(const ForwardOutput &out, const EncodedExample &example) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 1; i < example.size(); ++i) {
    const auto label = example.lm_labels[i];
    if (label == kIgnoreLabel) continue;
    sum -= out.row(i - 1)[static_cast<std::size_t>(label)];
    ++count;
  }
  return {sum, count};
}

}  // namespace edge
