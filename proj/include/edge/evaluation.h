// include/edge/evaluation.h

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

#ifndef EDGE_EVALUATION_H_
#define EDGE_EVALUATION_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "edge/frames.h"

namespace edge {

/// One line of a generations JSONL file.
struct RunRecord {
  std::vector<std::string> context;
  std::string exemplar;
  std::vector<std::string> frames;  ///< conditioning frames
  std::string response;
  std::uint64_t seed = 0;
};

nlohmann::json to_json(const RunRecord &record);
RunRecord run_record_from_json(const nlohmann::json &j);
std::vector<RunRecord> load_run_records(const std::string &path);

/// Lowercased, punctuation-separated whitespace tokens.
std::vector<std::string> metric_tokens(std::string_view text);

/// Distinct n-grams over total n-grams, pooled over all responses. Throws
/// when n is 0 or there are no n-grams.
double dist_n(const std::vector<std::vector<std::string>> &responses, std::size_t n);

/// Fraction of the exemplar's frame set present in the frames extracted from
/// `generated`. nullopt for an empty exemplar frame set.
std::optional<double> sem_cov(std::string_view generated, const FrameSequence &exemplar_frames,
                              const FrameLexicon &lexicon);

/// Sentence BLEU with n <= 2, uniform weights and brevity penalty. An order
/// with no matches uses (0 + 1) / (total + 1). Empty hypothesis scores 0.
double sentence_bleu2(const std::vector<std::string> &hypothesis,
                      const std::vector<std::string> &reference);
/// Mean sentence_bleu2 over (generated, exemplar) text pairs.
double avg_bleu2(const std::vector<std::pair<std::string, std::string>> &pairs);

struct MetricsReport {
  std::map<std::size_t, double> dist;  ///< n -> Dist-n
  double sem_cov = 0.0;
  double avg_bleu2 = 0.0;
  std::size_t responses = 0;
  std::size_t exemplars = 0;          ///< distinct exemplar texts
  std::size_t sem_cov_excluded = 0;   ///< records with no exemplar frames

  nlohmann::json to_json() const;
};

/// Dist-2/3 over all responses, mean SemCov against each record's frames,
/// and Avg BLEU-2 against each record's exemplar. Throws on an empty run.
MetricsReport evaluate_run(const std::vector<RunRecord> &records, const FrameLexicon &lexicon);

}  // namespace edge

#endif  // EDGE_EVALUATION_H_
