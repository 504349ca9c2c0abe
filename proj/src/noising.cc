// src/noising.cc

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

#include "edge/noising.h"

#include <cmath>
#include <utility>

#include "edge/error.h"

namespace edge {

void NoisingConfig::validate() const {
  auto prob = [](double p, const char *name) {
    if (!(p >= 0.0 && p <= 1.0))
      throw ConfigError(std::string(name) + " must be in [0,1], got " + std::to_string(p));
  };
  prob(drop_rate, "noise.drop_rate");
  prob(shuffle_prob, "noise.shuffle_prob");
  if (!(add_ratio >= 0.0))
    throw ConfigError("noise.add_ratio must be >= 0, got " + std::to_string(add_ratio));
}

FrameSequence drop_frames(const FrameSequence &seq, double rate, Rng &rng) {
  FrameSequence out;
  out.source_text = seq.source_text;
  for (const auto &f : seq.frames)
    if (!rng.bernoulli(rate)) out.frames.push_back(f);
  return out;
}

FrameSequence shuffle_frames(const FrameSequence &seq, double prob, Rng &rng) {
  FrameSequence out = seq;
  auto &v = out.frames;
  std::size_t i = 0;
  while (i + 1 < v.size()) {
    if (rng.bernoulli(prob)) {
      std::swap(v[i], v[i + 1]);
      i += 2;
    } else {
      ++i;
    }
  }
  return out;
}

FrameSequence add_random_frames(const FrameSequence &seq, double ratio,
                                const std::vector<std::string> &vocab, Rng &rng) {
  const auto k = static_cast<std::size_t>(std::round(ratio * static_cast<double>(seq.size())));
  if (k > 0 && vocab.empty()) throw Error("cannot add random frames from an empty vocabulary");
  FrameSequence out = seq;
  for (std::size_t j = 0; j < k; ++j) {
    Frame f(vocab[rng.uniform_int(vocab.size())]);
    const auto pos = rng.uniform_int(out.frames.size() + 1);
    out.frames.insert(out.frames.begin() + static_cast<std::ptrdiff_t>(pos), std::move(f));
  }
  return out;
}

FrameSequence noise(const FrameSequence &seq, const NoisingConfig &config,
                    const std::vector<std::string> &vocab, Rng &rng) {
  auto s = drop_frames(seq, config.drop_rate, rng);
  s = shuffle_frames(s, config.shuffle_prob, rng);
  return add_random_frames(s, config.add_ratio, vocab, rng);
}

FrameSequence noise(const FrameSequence &seq, const NoisingConfig &config,
                    const std::vector<std::string> &vocab) {
  Rng rng(config.seed);
  return noise(seq, config, vocab, rng);
}

}  // namespace edge
