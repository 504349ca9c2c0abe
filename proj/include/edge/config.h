// include/edge/config.h

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

#ifndef EDGE_CONFIG_H_
#define EDGE_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "edge/generation.h"
#include "edge/noising.h"
#include "edge/sequence.h"
#include "edge/tiny_gpt.h"
#include "edge/trainer.h"

namespace edge {

struct RunPaths {
  std::string lexicon;
  std::string train;
  std::string valid;
  std::string test;
  std::string checkpoint;
  std::string generations;  ///< JSONL; retrieval runs add ".<size>" before the extension
  std::string report;
  std::string anti_scam_output;
};

enum class ExemplarSource { kGold, kRetrieval };

struct RunConfig {
  std::uint64_t seed = 0;
  RunPaths paths;
  TinyGptConfig model;
  NoisingConfig noise;
  TrainingConfig train;
  SequenceLimits sequence;
  GenerationConfig generation;
  std::size_t min_count = 1;
  ExemplarSource exemplar_source = ExemplarSource::kGold;
  std::vector<std::size_t> subset_sizes{1, 5, 10};
  std::string reranker_url;  ///< empty: built-in TF cosine scorer
  bool reranker_fallback = false;
  bool pronoun_frames = false;

  nlohmann::json raw;  ///< the flattened input, stored in checkpoints
};

/// Flattens nested objects into dotted keys ("train.batch_size"); arrays
/// stay leaves.
nlohmann::json flatten_config(const nlohmann::json &j);

/// Parses a config object. Every unknown key and every invalid value is
/// collected and reported in one ConfigError. Relative paths resolve against
/// `base_dir`. The top-level seed is spread to each component through
/// derive_seed.
RunConfig parse_run_config(const nlohmann::json &j, const std::string &base_dir = ".");
RunConfig load_run_config(const std::string &path);

/// The keys parse_run_config accepts.
const std::vector<std::string> &known_config_keys();

}  // namespace edge

#endif  // EDGE_CONFIG_H_
