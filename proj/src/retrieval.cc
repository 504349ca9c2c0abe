// src/retrieval.cc

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

#include "edge/retrieval.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <httplib.h>
#include <json.hpp>

#include "edge/error.h"
#include "edge/text.h"

namespace edge {

TfVector TfVector::from_text(std::string_view text) {
  TfVector v;
  for (const auto &t : tokenize(to_lower(text))) v.counts[t] += 1.0;
  double sq = 0.0;
  for (const auto &[_, c] : v.counts) sq += c * c;
  v.norm = std::sqrt(sq);
  return v;
}

double TfVector::cosine(const TfVector &other) const {
  if (norm == 0.0 || other.norm == 0.0) return 0.0;
  const auto *small = this, *large = &other;
  if (small->counts.size() > large->counts.size()) std::swap(small, large);
  double dot = 0.0;
  for (const auto &[w, c] : small->counts) {
    auto it = large->counts.find(w);
    if (it != large->counts.end()) dot += c * it->second;
  }
  return dot / (norm * other.norm);
}

namespace {

std::string join_context(const std::vector<std::string> &context) {
  std::string s;
  for (const auto &u : context) {
    if (!s.empty()) s += ' ';
    s += u;
  }
  return s;
}

}  // namespace

std::vector<double> TfCosineScorer::score(const std::vector<std::string> &context,
                                          const ExemplarIndex &index) const {
  const auto q = TfVector::from_text(join_context(context));
  std::vector<double> out;
  out.reserve(index.size());
  for (const auto &e : index.entries()) out.push_back(q.cosine(e.features));
  return out;
}

HttpRerankerScorer::HttpRerankerScorer(std::string base_url, bool fallback,
                                       std::chrono::milliseconds timeout)
    : base_url_(std::move(base_url)), fallback_(fallback), timeout_(timeout) {
  while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
}

std::vector<double> HttpRerankerScorer::score(const std::vector<std::string> &context,
                                              const ExemplarIndex &index) const {
  try {
    httplib::Client client(base_url_);
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);
    nlohmann::json body{{"context", context}, {"candidates", nlohmann::json::array()}};
    for (const auto &e : index.entries()) body["candidates"].push_back(e.text);
    auto res = client.Post("/rank", body.dump(), "application/json");
    if (!res) throw Error("reranker " + base_url_ + ": " + httplib::to_string(res.error()));
    if (res->status != 200)
      throw Error("reranker " + base_url_ + ": HTTP " + std::to_string(res->status));
    std::vector<double> scores;
    try {
      scores = nlohmann::json::parse(res->body).at("scores").get<std::vector<double>>();
    } catch (const nlohmann::json::exception &e) {
      throw Error("reranker " + base_url_ + ": malformed reply: " + e.what());
    }
    if (scores.size() != index.size())
      throw Error("reranker " + base_url_ + ": expected " + std::to_string(index.size()) +
                  " scores, got " + std::to_string(scores.size()));
    return scores;
  } catch (const Error &) {
    if (!fallback_) throw;
    return TfCosineScorer().score(context, index);
  }
}

ExemplarIndex::ExemplarIndex(std::vector<ExemplarEntry> entries,
                             std::shared_ptr<const CandidateScorer> scorer)
    : entries_(std::move(entries)), scorer_(std::move(scorer)) {
  if (entries_.empty()) throw Error("exemplar index: no responses");
  if (!scorer_) scorer_ = std::make_shared<TfCosineScorer>();
}

ExemplarIndex build_index(const std::vector<std::string> &responses, const FrameLexicon &lexicon,
                          std::shared_ptr<const CandidateScorer> scorer) {
  if (responses.empty()) throw Error("build_index: no responses");
  std::vector<ExemplarEntry> entries;
  entries.reserve(responses.size());
  for (const auto &r : responses) {
    ExemplarEntry e;
    e.text = r;
    e.frames = extract_frames(r, lexicon);
    e.features = TfVector::from_text(r);
    entries.push_back(std::move(e));
  }
  return ExemplarIndex(std::move(entries), std::move(scorer));
}

ExemplarIndex build_index(const std::vector<ContextResponsePair> &pairs, const FrameLexicon &lexicon,
                          std::shared_ptr<const CandidateScorer> scorer) {
  if (pairs.empty()) throw Error("build_index: no responses");
  std::vector<ExemplarEntry> entries;
  entries.reserve(pairs.size());
  for (const auto &p : pairs) {
    ExemplarEntry e;
    e.text = p.response.text;
    e.frames = extract_frames(p.response.text, lexicon);
    for (const auto &u : p.context) e.source_context.push_back(u.text);
    e.features = TfVector::from_text(join_context(e.source_context));
    entries.push_back(std::move(e));
  }
  return ExemplarIndex(std::move(entries), std::move(scorer));
}

std::vector<ScoredCandidate> retrieve(const ExemplarIndex &index,
                                      const std::vector<std::string> &context, std::size_t k) {
  if (k < 1) throw Error("retrieve: k must be >= 1");
  const auto scores = index.scorer().score(context, index);
  if (scores.size() != index.size()) throw Error("retrieve: scorer returned wrong number of scores");
  std::vector<ScoredCandidate> all(index.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = {i, scores[i]};
  std::stable_sort(all.begin(), all.end(),
                   [](const auto &a, const auto &b) { return a.score > b.score; });
  if (all.size() > k) all.resize(k);
  return all;
}

double jaccard(const std::set<std::string> &a, const std::set<std::string> &b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t inter = 0;
  for (const auto &x : a) inter += b.count(x);
  const std::size_t uni = a.size() + b.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

std::vector<std::size_t> select_diverse_subset(const std::vector<std::set<std::string>> &ranked_frames,
                                               std::size_t size) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < ranked_frames.size() && kept.size() < size; ++i) {
    bool ok = true;
    for (std::size_t s : kept) {
      if (jaccard(ranked_frames[i], ranked_frames[s]) >= kDiversityThreshold) {
        ok = false;
        break;
      }
    }
    if (ok) kept.push_back(i);
  }
  return kept;
}

std::vector<ScoredCandidate> select_diverse_subset(const std::vector<ScoredCandidate> &ranked,
                                                   const ExemplarIndex &index, std::size_t size) {
  std::vector<std::set<std::string>> sets;
  sets.reserve(ranked.size());
  for (const auto &c : ranked) sets.push_back(index.entries().at(c.entry).frames.label_set());
  std::vector<ScoredCandidate> out;
  for (std::size_t i : select_diverse_subset(sets, size)) out.push_back(ranked[i]);
  return out;
}

}  // namespace edge
