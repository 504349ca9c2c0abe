// include/edge/noising.h

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

#ifndef EDGE_NOISING_H_
#define EDGE_NOISING_H_

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "edge/frames.h"
#include "edge/rng.h"

namespace edge {

/// Training-time frame perturbation. Defaults: drop 15% of frames, swap
/// adjacent frames with probability 0.1, then insert random frames to grow
/// the sequence by 30%.
struct NoisingConfig {
  double drop_rate = 0.15;
  double shuffle_prob = 0.1;
  double add_ratio = 0.30;
  std::uint64_t seed = 0;

  /// Throws ConfigError when a probability is outside [0,1] or add_ratio < 0.
  void validate() const;
};

/// Each frame is removed independently with probability `rate`.
FrameSequence drop_frames(const FrameSequence &seq, double rate, Rng &rng);

/// Left-to-right scan: at each i < n-1, with probability `prob` swap frames
/// i and i+1 and skip past the swapped pair.
FrameSequence shuffle_frames(const FrameSequence &seq, double prob, Rng &rng);

/// Inserts round(ratio * n) frames (half away from zero), drawn uniformly
/// with replacement from `vocab`, each at a uniformly random position.
FrameSequence add_random_frames(const FrameSequence &seq, double ratio,
                                const std::vector<std::string> &vocab, Rng &rng);

/// drop -> shuffle -> add.
FrameSequence noise(const FrameSequence &seq, const NoisingConfig &config,
                    const std::vector<std::string> &vocab, Rng &rng);
/// Same, with a generator seeded from config.seed.
FrameSequence noise(const FrameSequence &seq, const NoisingConfig &config,
                    const std::vector<std::string> &vocab);

}  // namespace edge

#endif  // EDGE_NOISING_H_
