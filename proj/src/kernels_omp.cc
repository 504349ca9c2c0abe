// src/kernels_omp.cc

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

#include <algorithm>
#include <cmath>
#include <vector>

#include "edge/kernels.h"

#ifdef EDGE_HAVE_OPENMP
#include <omp.h>
#define EDGE_PRAGMA(x) _Pragma(#x)
#else
#define EDGE_PRAGMA(x)
#endif

namespace edge::kernels {

bool openmp_enabled() {
#ifdef EDGE_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

namespace omp {

namespace {
constexpr double kLnEps = 1e-5;
constexpr double kGeluC = 0.7978845608028654;
constexpr double kGeluA = 0.044715;
// Below this many multiply-adds the fork/join overhead dominates.
constexpr std::size_t kMinParallelWork = 1 << 14;
}  // namespace

void linear(std::span<const double> x, std::span<const double> w, std::span<const double> b,
            std::size_t n, std::size_t in, std::size_t out, std::span<double> y) {
  const auto rows = static_cast<long>(n);
  const auto cols = static_cast<long>(out);
  const bool par = n * in * out >= kMinParallelWork;
  EDGE_PRAGMA(omp parallel for collapse(2) schedule(static) if(par))
  for (long i = 0; i < rows; ++i) {
    for (long o = 0; o < cols; ++o) {
      const double *xi = x.data() + i * in;
      const double *wo = w.data() + o * in;
      double acc = 0.0;
      for (std::size_t k = 0; k < in; ++k) acc += xi[k] * wo[k];
      y[i * out + o] = acc + (b.empty() ? 0.0 : b[o]);
    }
  }
}

void linear_grad_input(std::span<const double> dy, std::span<const double> w, std::size_t n,
                       std::size_t in, std::size_t out, std::span<double> dx) {
  const auto rows = static_cast<long>(n);
  const bool par = n * in * out >= kMinParallelWork;
  EDGE_PRAGMA(omp parallel for schedule(static) if(par))
  for (long i = 0; i < rows; ++i) {
    double *dxi = dx.data() + i * in;
    std::fill(dxi, dxi + in, 0.0);
    for (std::size_t o = 0; o < out; ++o) {
      const double g = dy[i * out + o];
      const double *wo = w.data() + o * in;
      for (std::size_t k = 0; k < in; ++k) dxi[k] += g * wo[k];
    }
  }
}

void linear_grad_weight(std::span<const double> dy, std::span<const double> x, std::size_t n,
                        std::size_t in, std::size_t out, std::span<double> dw,
                        std::span<double> db) {
  const auto cols = static_cast<long>(out);
  const bool par = n * in * out >= kMinParallelWork;
  EDGE_PRAGMA(omp parallel for schedule(static) if(par))
  for (long o = 0; o < cols; ++o) {
    double *dwo = dw.data() + o * in;
    double bias = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double g = dy[i * out + o];
      const double *xi = x.data() + i * in;
      for (std::size_t k = 0; k < in; ++k) dwo[k] += g * xi[k];
      bias += g;
    }
    if (!db.empty()) db[o] += bias;
  }
}

void layernorm(std::span<const double> x, std::span<const double> gamma,
               std::span<const double> beta, std::size_t n, std::size_t d, std::span<double> y,
               std::span<double> mean, std::span<double> rstd) {
  const auto rows = static_cast<long>(n);
  EDGE_PRAGMA(omp parallel for schedule(static) if(n * d >= kMinParallelWork))
  for (long i = 0; i < rows; ++i) {
    const double *xi = x.data() + i * d;
    double m = 0.0;
    for (std::size_t c = 0; c < d; ++c) m += xi[c];
    m /= static_cast<double>(d);
    double v = 0.0;
    for (std::size_t c = 0; c < d; ++c) v += (xi[c] - m) * (xi[c] - m);
    v /= static_cast<double>(d);
    const double r = 1.0 / std::sqrt(v + kLnEps);
    mean[i] = m;
    rstd[i] = r;
    for (std::size_t c = 0; c < d; ++c) y[i * d + c] = (xi[c] - m) * r * gamma[c] + beta[c];
  }
}

void layernorm_backward(std::span<const double> dy, std::span<const double> x,
                        std::span<const double> mean, std::span<const double> rstd,
                        std::span<const double> gamma, std::size_t n, std::size_t d,
                        std::span<double> dx, std::span<double> dgamma, std::span<double> dbeta) {
  const auto rows = static_cast<long>(n);
  const auto cols = static_cast<long>(d);
  const bool par = n * d >= kMinParallelWork;
  EDGE_PRAGMA(omp parallel if(par))
  {
    EDGE_PRAGMA(omp for schedule(static))
    for (long i = 0; i < rows; ++i) {
      const double *xi = x.data() + i * d;
      const double *gi = dy.data() + i * d;
      double sum_g = 0.0, sum_gx = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        const double xhat = (xi[c] - mean[i]) * rstd[i];
        const double g = gi[c] * gamma[c];
        sum_g += g;
        sum_gx += g * xhat;
      }
      sum_g /= static_cast<double>(d);
      sum_gx /= static_cast<double>(d);
      for (std::size_t c = 0; c < d; ++c) {
        const double xhat = (xi[c] - mean[i]) * rstd[i];
        dx[i * d + c] = rstd[i] * (gi[c] * gamma[c] - sum_g - xhat * sum_gx);
      }
    }
    EDGE_PRAGMA(omp for schedule(static))
    for (long c = 0; c < cols; ++c) {
      double sg = 0.0, sb = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double xhat = (x[i * d + c] - mean[i]) * rstd[i];
        sg += dy[i * d + c] * xhat;
        sb += dy[i * d + c];
      }
      dgamma[c] += sg;
      dbeta[c] += sb;
    }
  }
}

void attention(std::span<const double> qkv, std::size_t n, std::size_t d, std::size_t heads,
               std::span<double> probs, std::span<double> out) {
  const std::size_t dh = d / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  const std::size_t stride = 3 * d;
  const auto hn = static_cast<long>(heads * n);
  EDGE_PRAGMA(omp parallel for schedule(dynamic, 4) if(n * n * d >= kMinParallelWork))
  for (long hi = 0; hi < hn; ++hi) {
    const std::size_t h = static_cast<std::size_t>(hi) / n;
    const std::size_t i = static_cast<std::size_t>(hi) % n;
    const double *q = qkv.data() + i * stride + h * dh;
    double *p = probs.data() + (h * n + i) * n;
    double mx = -INFINITY;
    for (std::size_t j = 0; j <= i; ++j) {
      const double *k = qkv.data() + j * stride + d + h * dh;
      double s = 0.0;
      for (std::size_t c = 0; c < dh; ++c) s += q[c] * k[c];
      p[j] = s * scale;
      mx = std::max(mx, p[j]);
    }
    double z = 0.0;
    for (std::size_t j = 0; j <= i; ++j) {
      p[j] = std::exp(p[j] - mx);
      z += p[j];
    }
    for (std::size_t j = 0; j <= i; ++j) p[j] /= z;
    for (std::size_t j = i + 1; j < n; ++j) p[j] = 0.0;
    double *o = out.data() + i * d + h * dh;
    for (std::size_t c = 0; c < dh; ++c) o[c] = 0.0;
    for (std::size_t j = 0; j <= i; ++j) {
      const double *v = qkv.data() + j * stride + 2 * d + h * dh;
      for (std::size_t c = 0; c < dh; ++c) o[c] += p[j] * v[c];
    }
  }
}

void attention_backward(std::span<const double> dout, std::span<const double> qkv,
                        std::span<const double> probs, std::size_t n, std::size_t d,
                        std::size_t heads, std::span<double> dqkv) {
  const std::size_t dh = d / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  const std::size_t stride = 3 * d;
  std::fill(dqkv.begin(), dqkv.end(), 0.0);
  // Heads write disjoint column ranges of dqkv, so each is one task.
  const auto nh = static_cast<long>(heads);
  EDGE_PRAGMA(omp parallel for schedule(static) if(n * n * d >= kMinParallelWork))
  for (long hl = 0; hl < nh; ++hl) {
    const auto h = static_cast<std::size_t>(hl);
    std::vector<double> dp(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double *go = dout.data() + i * d + h * dh;
      const double *p = probs.data() + (h * n + i) * n;
      double dot = 0.0;
      for (std::size_t j = 0; j <= i; ++j) {
        const double *v = qkv.data() + j * stride + 2 * d + h * dh;
        double *dv = dqkv.data() + j * stride + 2 * d + h * dh;
        double s = 0.0;
        for (std::size_t c = 0; c < dh; ++c) {
          s += go[c] * v[c];
          dv[c] += p[j] * go[c];
        }
        dp[j] = s;
        dot += p[j] * s;
      }
      const double *q = qkv.data() + i * stride + h * dh;
      double *dq = dqkv.data() + i * stride + h * dh;
      for (std::size_t j = 0; j <= i; ++j) {
        const double ds = p[j] * (dp[j] - dot) * scale;
        const double *k = qkv.data() + j * stride + d + h * dh;
        double *dk = dqkv.data() + j * stride + d + h * dh;
        for (std::size_t c = 0; c < dh; ++c) {
          dq[c] += ds * k[c];
          dk[c] += ds * q[c];
        }
      }
    }
  }
}

void gelu(std::span<const double> x, std::span<double> y) {
  const auto len = static_cast<long>(x.size());
  EDGE_PRAGMA(omp parallel for schedule(static) if(x.size() >= kMinParallelWork))
  for (long i = 0; i < len; ++i) {
    const double v = x[i];
    y[i] = 0.5 * v * (1.0 + std::tanh(kGeluC * (v + kGeluA * v * v * v)));
  }
}

void gelu_backward(std::span<const double> dy, std::span<const double> x, std::span<double> dx) {
  const auto len = static_cast<long>(x.size());
  EDGE_PRAGMA(omp parallel for schedule(static) if(x.size() >= kMinParallelWork))
  for (long i = 0; i < len; ++i) {
    const double v = x[i];
    const double t = std::tanh(kGeluC * (v + kGeluA * v * v * v));
    const double dt = (1.0 - t * t) * kGeluC * (1.0 + 3.0 * kGeluA * v * v);
    dx[i] = dy[i] * (0.5 * (1.0 + t) + 0.5 * v * dt);
  }
}

}  // namespace omp
}  // namespace edge::kernels
