// include/edge/retrieval.h

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

#ifndef EDGE_RETRIEVAL_H_
#define EDGE_RETRIEVAL_H_

#include <chrono>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "edge/corpus.h"
#include "edge/frames.h"

namespace edge {

/// Sparse term-frequency vector with its Euclidean norm.
struct TfVector {
  std::map<std::string, double> counts;
  double norm = 0.0;

  static TfVector from_text(std::string_view text);
  double cosine(const TfVector &other) const;
};

struct ExemplarEntry {
  std::string text;
  FrameSequence frames;
  std::vector<std::string> source_context;  ///< may be empty
  TfVector features;                        ///< over source_context, or text when absent
};

class ExemplarIndex;

/// Ranking backend. score() returns one score per index entry, in index
/// order; higher is better.
class CandidateScorer {
 public:
  virtual ~CandidateScorer() = default;
  virtual std::vector<double> score(const std::vector<std::string> &context,
                                    const ExemplarIndex &index) const = 0;
};

/// Cosine between the query context and each entry's stored context.
class TfCosineScorer : public CandidateScorer {
 public:
  std::vector<double> score(const std::vector<std::string> &context,
                            const ExemplarIndex &index) const override;
};

/// Client for an external reranker:
///   POST <url>/rank {"context": [str], "candidates": [str]} -> {"scores": [float]}
/// Transport errors, non-200 replies and malformed bodies throw edge::Error,
/// unless `fallback` is set, in which case the TF cosine scorer is used.
class HttpRerankerScorer : public CandidateScorer {
 public:
  HttpRerankerScorer(std::string base_url, bool fallback = false,
                     std::chrono::milliseconds timeout = std::chrono::seconds(10));
  std::vector<double> score(const std::vector<std::string> &context,
                            const ExemplarIndex &index) const override;

 private:
  std::string base_url_;
  bool fallback_;
  std::chrono::milliseconds timeout_;
};

class ExemplarIndex {
 public:
  ExemplarIndex(std::vector<ExemplarEntry> entries, std::shared_ptr<const CandidateScorer> scorer);

  const std::vector<ExemplarEntry> &entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const CandidateScorer &scorer() const { return *scorer_; }

 private:
  std::vector<ExemplarEntry> entries_;
  std::shared_ptr<const CandidateScorer> scorer_;
};

/// Index over bare responses; each is featurized by its own text.
ExemplarIndex build_index(const std::vector<std::string> &responses, const FrameLexicon &lexicon,
                          std::shared_ptr<const CandidateScorer> scorer = nullptr);
/// Index over training pairs; entries keep their source context.
ExemplarIndex build_index(const std::vector<ContextResponsePair> &pairs, const FrameLexicon &lexicon,
                          std::shared_ptr<const CandidateScorer> scorer = nullptr);

struct ScoredCandidate {
  std::size_t entry = 0;  ///< index into ExemplarIndex::entries()
  double score = 0.0;
};

/// Top-k by descending score; ties keep index order. k larger than the
/// index returns everything.
std::vector<ScoredCandidate> retrieve(const ExemplarIndex &index,
                                      const std::vector<std::string> &context, std::size_t k);

/// |a ∩ b| / |a ∪ b|; two empty sets give 1.0.
double jaccard(const std::set<std::string> &a, const std::set<std::string> &b);

inline constexpr double kDiversityThreshold = 0.5;

/// Greedy scan in rank order seeded with the top candidate; a candidate is
/// kept iff its Jaccard similarity to every kept one is below 0.5.
std::vector<ScoredCandidate> select_diverse_subset(const std::vector<ScoredCandidate> &ranked,
                                                   const ExemplarIndex &index, std::size_t size);
/// Same rule over raw frame sets; returns positions into `ranked_frames`.
std::vector<std::size_t> select_diverse_subset(const std::vector<std::set<std::string>> &ranked_frames,
                                               std::size_t size);

}  // namespace edge

#endif  // EDGE_RETRIEVAL_H_
