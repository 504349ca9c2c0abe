// include/edge/kernels.h

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

#ifndef EDGE_KERNELS_H_
#define EDGE_KERNELS_H_

#include <cstddef>
#include <span>

// Dense kernels behind the transformer. All matrices are row-major.
//
// Two implementations share one interface: `serial` is the reference and
// `omp` splits the outer loop across OpenMP threads. Every output element is
// reduced by a single thread in the same order as the serial loop, so the
// two produce bitwise-identical results for any thread count.

namespace edge::kernels {

#define EDGE_KERNEL_DECLS                                                                      \
  /* y[n,out] = x[n,in] * w[out,in]^T + b[out] (b may be empty) */                             \
  void linear(std::span<const double> x, std::span<const double> w, std::span<const double> b, \
              std::size_t n, std::size_t in, std::size_t out, std::span<double> y);            \
  /* dx[n,in] = dy[n,out] * w[out,in] */                                                       \
  void linear_grad_input(std::span<const double> dy, std::span<const double> w, std::size_t n, \
                         std::size_t in, std::size_t out, std::span<double> dx);               \
  /* dw[out,in] += dy^T x ; db[out] += colsum(dy) (db may be empty) */                         \
  void linear_grad_weight(std::span<const double> dy, std::span<const double> x, std::size_t n, \
                          std::size_t in, std::size_t out, std::span<double> dw,               \
                          std::span<double> db);                                               \
  /* Row-wise layer norm; mean and rstd are saved for the backward pass. */                    \
  void layernorm(std::span<const double> x, std::span<const double> gamma,                     \
                 std::span<const double> beta, std::size_t n, std::size_t d,                   \
                 std::span<double> y, std::span<double> mean, std::span<double> rstd);         \
  void layernorm_backward(std::span<const double> dy, std::span<const double> x,               \
                          std::span<const double> mean, std::span<const double> rstd,          \
                          std::span<const double> gamma, std::size_t n, std::size_t d,         \
                          std::span<double> dx, std::span<double> dgamma,                      \
                          std::span<double> dbeta);                                            \
  /* Causal multi-head attention over a packed qkv[n, 3d] buffer.                               \
     probs[heads, n, n] keeps the softmax weights; out is [n, d]. */                           \
  void attention(std::span<const double> qkv, std::size_t n, std::size_t d, std::size_t heads, \
                 std::span<double> probs, std::span<double> out);                              \
  void attention_backward(std::span<const double> dout, std::span<const double> qkv,           \
                          std::span<const double> probs, std::size_t n, std::size_t d,         \
                          std::size_t heads, std::span<double> dqkv);                          \
  /* tanh-approximated GELU, elementwise. */                                                   \
  void gelu(std::span<const double> x, std::span<double> y);                                   \
  void gelu_backward(std::span<const double> dy, std::span<const double> x,                    \
                     std::span<double> dx);

namespace serial {
EDGE_KERNEL_DECLS
}  // namespace serial

namespace omp {
EDGE_KERNEL_DECLS
}  // namespace omp

#undef EDGE_KERNEL_DECLS

/// Whether the omp namespace was compiled with OpenMP (otherwise it runs
/// the same loops on one thread).
bool openmp_enabled();

}  // namespace edge::kernels

#endif  // EDGE_KERNELS_H_
