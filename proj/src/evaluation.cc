// src/evaluation.cc

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

#include "edge/evaluation.h"

#include <cmath>
#include <fstream>
#include <set>

#include "edge/error.h"
#include "edge/text.h"

namespace edge {

using nlohmann::json;

json to_json(const RunRecord &r) {
  return json{{"context", r.context},
              {"exemplar", r.exemplar},
              {"frames", r.frames},
              {"response", r.response},
              {"seed", r.seed}};
}

RunRecord run_record_from_json(const json &j) {
  RunRecord r;
  r.context = j.at("context").get<std::vector<std::string>>();
  r.exemplar = j.at("exemplar").get<std::string>();
  r.frames = j.at("frames").get<std::vector<std::string>>();
  r.response = j.at("response").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  return r;
}

std::vector<RunRecord> load_run_records(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open run file " + path);
  std::vector<RunRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    try {
      out.push_back(run_record_from_json(json::parse(line)));
    } catch (const json::exception &e) {
      throw ParseError(path, lineno, e.what());
    }
  }
  return out;
}

std::vector<std::string> metric_tokens(std::string_view text) { return tokenize(to_lower(text)); }

double dist_n(const std::vector<std::vector<std::string>> &responses, std::size_t n) {
  if (n == 0) throw Error("dist_n: n must be >= 1");
  std::set<std::vector<std::string>> distinct;
  std::size_t total = 0;
  for (const auto &r : responses) {
    for (std::size_t i = 0; i + n <= r.size(); ++i) {
      distinct.emplace(r.begin() + i, r.begin() + i + n);
      ++total;
    }
  }
  if (total == 0) throw Error("dist_n: no " + std::to_string(n) + "-grams");
  return static_cast<double>(distinct.size()) / static_cast<double>(total);
}

std::optional<double> sem_cov(std::string_view generated, const FrameSequence &exemplar_frames,
                              const FrameLexicon &lexicon) {
  const auto want = exemplar_frames.label_set();
  if (want.empty()) return std::nullopt;
  const auto got = extract_frames(generated, lexicon).label_set();
  std::size_t hit = 0;
  for (const auto &f : want) hit += got.count(f);
  return static_cast<double>(hit) / static_cast<double>(want.size());
}

namespace {

std::map<std::vector<std::string>, std::size_t> ngram_counts(const std::vector<std::string> &t,
                                                             std::size_t n) {
  std::map<std::vector<std::string>, std::size_t> c;
  for (std::size_t i = 0; i + n <= t.size(); ++i) ++c[{t.begin() + i, t.begin() + i + n}];
  return c;
}

}  // namespace

double sentence_bleu2(const std::vector<std::string> &hyp, const std::vector<std::string> &ref) {
  if (hyp.empty()) return 0.0;
  double log_sum = 0.0;
  for (std::size_t n = 1; n <= 2; ++n) {
    const auto h = ngram_counts(hyp, n);
    const auto r = ngram_counts(ref, n);
    std::size_t match = 0, total = 0;
    for (const auto &[g, c] : h) {
      total += c;
      auto it = r.find(g);
      if (it != r.end()) match += std::min(c, it->second);
    }
    const double p = match == 0 ? 1.0 / static_cast<double>(total + 1)
                                : static_cast<double>(match) / static_cast<double>(total);
    log_sum += 0.5 * std::log(p);
  }
  const double h_len = static_cast<double>(hyp.size());
  const double r_len = static_cast<double>(ref.size());
  const double bp = h_len >= r_len ? 1.0 : std::exp(1.0 - r_len / h_len);
  return bp * std::exp(log_sum);
}

double avg_bleu2(const std::vector<std::pair<std::string, std::string>> &pairs) {
  if (pairs.empty()) throw Error("avg_bleu2: no pairs");
  double s = 0.0;
  for (const auto &[gen, ex] : pairs) s += sentence_bleu2(metric_tokens(gen), metric_tokens(ex));
  return s / static_cast<double>(pairs.size());
}

json MetricsReport::to_json() const {
  json d = json::object();
  for (const auto &[n, v] : dist) d[std::to_string(n)] = v;
  return json{{"dist", d},
              {"sem_cov", sem_cov},
              {"avg_bleu2", avg_bleu2},
              {"counts",
               {{"responses", responses},
                {"exemplars", exemplars},
                {"sem_cov_excluded", sem_cov_excluded}}}};
}

MetricsReport evaluate_run(const std::vector<RunRecord> &records, const FrameLexicon &lexicon) {
  if (records.empty()) throw Error("evaluate_run: empty run");
  MetricsReport rep;
  std::vector<std::vector<std::string>> toks;
  std::vector<std::pair<std::string, std::string>> pairs;
  std::set<std::string> exemplars;
  double cov = 0.0;
  std::size_t cov_n = 0;
  for (const auto &r : records) {
    toks.push_back(metric_tokens(r.response));
    pairs.emplace_back(r.response, r.exemplar);
    exemplars.insert(r.exemplar);
    if (auto c = sem_cov(r.response, FrameSequence::from_labels(r.frames), lexicon)) {
      cov += *c;
      ++cov_n;
    } else {
      ++rep.sem_cov_excluded;
    }
  }
  for (std::size_t n : {2, 3}) rep.dist[n] = dist_n(toks, n);
  rep.sem_cov = cov_n ? cov / static_cast<double>(cov_n) : 0.0;
  rep.avg_bleu2 = avg_bleu2(pairs);
  rep.responses = records.size();
  rep.exemplars = exemplars.size();
  return rep;
}

}  // namespace edge
