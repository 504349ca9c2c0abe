// tests/acceptance.cc

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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numeric>
#include <unordered_set>

#include <json.hpp>

#include "edge/app.h"
#include "edge/config.h"
#include "edge/corpus.h"
#include "edge/evaluation.h"
#include "edge/frames.h"
#include "edge/generation.h"
#include "edge/noising.h"
#include "edge/retrieval.h"
#include "edge/sequence.h"
#include "edge/tiny_gpt.h"
#include "test_util.h"

using namespace edge;
using nlohmann::json;
using edge::testing::random_sentence;
using edge::testing::read_file;
using edge::testing::source_path;
using edge::testing::TempDir;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int n, const std::string &name, const std::function<Outcome()> &fn) {
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception &e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("%s criterion %d: %s (%s)\n", o.pass ? "PASS" : "FAIL", n, name.c_str(), o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

// 1 ------------------------------------------------------------------------
Outcome golden_frames() {
  const auto start = Clock::now();
  std::ifstream in(source_path("tests/fixtures/golden_frames.jsonl"));
  if (!in) return {false, "fixture missing"};
  std::string line;
  int rows = 0, ok = 0;
  while (std::getline(in, line)) {
    const auto j = json::parse(line);
    if (j.value("extra", false)) continue;
    const auto lex = load_lexicon(source_path("tests/fixtures/" + j["lexicon"].get<std::string>()));
    ++rows;
    ok += extract_frames(j["text"].get<std::string>(), lex).labels() ==
          j["frames"].get<std::vector<std::string>>();
  }
  const double t = seconds_since(start);
  return {rows == 6 && ok == rows && t < 1.0,
          std::to_string(ok) + "/" + std::to_string(rows) + " rows, " + fmt(t) + " s"};
}

// 2 ------------------------------------------------------------------------
bool is_subsequence(const std::vector<std::string> &sub, const std::vector<std::string> &seq) {
  std::size_t j = 0;
  for (const auto &s : seq)
    if (j < sub.size() && sub[j] == s) ++j;
  return j == sub.size();
}

Outcome noising_statistics() {
  const auto start = Clock::now();
  std::vector<std::string> labels;
  for (int i = 0; i < 100; ++i) labels.push_back("F" + std::to_string(i));
  const auto seq = FrameSequence::from_labels(labels);
  const NoisingConfig cfg;
  const std::vector<std::string> vocab = labels;
  constexpr int kTrials = 10000;
  double dropped_sum = 0, full_sum = 0;
  int multiset_ok = 0, subseq_ok = 0, staged_ok = 0;
  for (int t = 0; t < kTrials; ++t) {
    Rng staged(derive_seed(123, static_cast<std::uint64_t>(t)));
    const auto d = drop_frames(seq, cfg.drop_rate, staged);
    const auto s = shuffle_frames(d, cfg.shuffle_prob, staged);
    const auto a = add_random_frames(s, cfg.add_ratio, vocab, staged);
    Rng whole(derive_seed(123, static_cast<std::uint64_t>(t)));
    const auto full = noise(seq, cfg, vocab, whole);
    dropped_sum += static_cast<double>(d.size());
    full_sum += static_cast<double>(full.size());
    subseq_ok += is_subsequence(d.labels(), labels);
    auto x = d.labels(), y = s.labels();
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    multiset_ok += x == y;
    staged_ok += a.labels() == full.labels();
  }
  const double drop_mean = dropped_sum / kTrials, full_mean = full_sum / kTrials;
  const double t = seconds_since(start);
  const bool pass = drop_mean >= 84 && drop_mean <= 86 && full_mean >= 109 && full_mean <= 112 &&
                    multiset_ok == kTrials && subseq_ok == kTrials && staged_ok == kTrials && t < 30;
  return {pass, "post-drop mean " + fmt(drop_mean) + ", full mean " + fmt(full_mean) + ", multiset " +
                    std::to_string(multiset_ok) + ", subsequence " + std::to_string(subseq_ok) +
                    ", staged==pipeline " + std::to_string(staged_ok) + ", " + fmt(t) + " s"};
}

// 3 ------------------------------------------------------------------------
double dist_oracle(const std::vector<std::vector<std::string>> &responses, std::size_t n) {
  std::unordered_set<std::string> distinct;
  std::size_t total = 0;
  for (const auto &r : responses)
    for (std::size_t i = 0; i + n <= r.size(); ++i) {
      std::string key;
      for (std::size_t j = i; j < i + n; ++j) key += r[j] + '\x1f';
      distinct.insert(key);
      ++total;
    }
  return static_cast<double>(distinct.size()) / static_cast<double>(total);
}

// Independent restatement of the diversity rule.
std::vector<std::size_t> diverse_oracle(const std::vector<std::set<std::string>> &ranked, std::size_t k) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (kept.size() == k) break;
    bool far = true;
    for (std::size_t s : kept) {
      std::vector<std::string> inter, uni;
      std::set_intersection(ranked[i].begin(), ranked[i].end(), ranked[s].begin(), ranked[s].end(),
                            std::back_inserter(inter));
      std::set_union(ranked[i].begin(), ranked[i].end(), ranked[s].begin(), ranked[s].end(),
                     std::back_inserter(uni));
      const double j = uni.empty() ? 1.0 : static_cast<double>(inter.size()) / static_cast<double>(uni.size());
      if (j >= 0.5) far = false;
    }
    if (far) kept.push_back(i);
  }
  return kept;
}

std::vector<double> nucleus_oracle(const std::vector<double> &p, double top_p) {
  std::vector<double> sorted = p;
  std::sort(sorted.rbegin(), sorted.rend());
  double mass = 0, threshold = 0;
  for (double x : sorted) {
    mass += x;
    threshold = x;
    if (mass >= top_p - 1e-12) break;
  }
  double kept = 0;
  for (double x : p)
    if (x >= threshold && x > 0) kept += x;
  std::vector<double> out(p.size(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] >= threshold && p[i] > 0) out[i] = p[i] / kept;
  return out;
}

Outcome metric_oracles() {
  Rng rng(2026);
  int dist_ok = 0, pool_ok = 0, nucleus_ok = 0;
  for (int c = 0; c < 500; ++c) {
    std::vector<std::vector<std::string>> corpus;
    for (std::size_t i = 1 + rng.uniform_int(20); i > 0; --i)
      corpus.push_back(metric_tokens(random_sentence(rng, 3, 15)));
    bool ok = true;
    for (std::size_t n : {2u, 3u}) ok &= std::abs(dist_n(corpus, n) - dist_oracle(corpus, n)) <= 1e-9;
    dist_ok += ok;
  }
  for (int p = 0; p < 1000; ++p) {
    std::vector<std::set<std::string>> ranked(1 + rng.uniform_int(30));
    for (auto &s : ranked)
      for (std::size_t i = rng.uniform_int(5); i > 0; --i)
        s.insert("F" + std::to_string(rng.uniform_int(8)));
    const std::size_t k = 1 + rng.uniform_int(10);
    pool_ok += select_diverse_subset(ranked, k) == diverse_oracle(ranked, k);
  }
  for (int d = 0; d < 50; ++d) {
    std::vector<double> p(2 + rng.uniform_int(50));
    for (auto &x : p) {
      const double r = rng.uniform();
      x = r < 0.1 ? 0.0 : r < 0.25 ? 0.125 : rng.uniform();
    }
    p[0] += 1e-3;
    const double s = std::accumulate(p.begin(), p.end(), 0.0);
    for (auto &x : p) x /= s;
    const double top_p = d == 0 ? 1.0 : 0.05 + 0.95 * rng.uniform();
    const auto got = nucleus_filter(p, top_p), want = nucleus_oracle(p, top_p);
    bool ok = true;
    for (std::size_t i = 0; i < p.size(); ++i) ok &= std::abs(got[i] - want[i]) <= 1e-9;
    nucleus_ok += ok;
  }
  return {dist_ok == 500 && pool_ok == 1000 && nucleus_ok == 50,
          "dist " + std::to_string(dist_ok) + "/500, diverse subset " + std::to_string(pool_ok) +
              "/1000, nucleus " + std::to_string(nucleus_ok) + "/50"};
}

// 4 ------------------------------------------------------------------------
Outcome sequence_layout() {
  const std::set<std::string> frames = {"FOOD", "DESIRING", "WHY", "?", "VEHICLE"};
  const auto tok = edge::testing::toy_tokenizer(frames);
  const std::vector<std::string> labels(frames.begin(), frames.end());
  Rng rng(4);
  int ok = 0;
  for (int t = 0; t < 1000; ++t) {
    std::vector<Utterance> ctx;
    for (std::size_t i = 1 + rng.uniform_int(7); i > 0; --i)
      ctx.push_back({rng.bernoulli(0.5) ? Speaker::kA : Speaker::kB, random_sentence(rng, 1, 20)});
    std::vector<std::string> f;
    for (std::size_t i = rng.uniform_int(8); i > 0; --i) f.push_back(labels[rng.uniform_int(labels.size())]);
    const Utterance resp{other(ctx.back().speaker), random_sentence(rng, 1, 15)};
    SequenceLimits lim;
    lim.max_sequence_length = 40 + rng.uniform_int(60);
    const auto ex = build_training_sequence(ctx, FrameSequence::from_labels(f), resp, tok, lim);
    std::size_t labelled = 0;
    for (std::size_t i = 0; i < ex.size(); ++i)
      if (ex.lm_labels[i] != kIgnoreLabel) {
        ++labelled;
        if (i <= ex.bor_position || ex.lm_labels[i] != ex.token_ids[i]) labelled = 1u << 30;
      }
    std::vector<std::string> back;
    for (auto id : ex.frame_block()) back.push_back(tok.frame_label(id).value_or("?!"));
    ok += labelled == tok.encode(resp.text).size() + 1 && back == f && ex.size() <= lim.max_sequence_length &&
          ex.token_ids.back() == SpecialTokens::kEos;
  }
  return {ok == 1000, std::to_string(ok) + "/1000 pairs"};
}

// 5, 6, 8 share one trained toy model ---------------------------------------
struct ToyRun {
  RunConfig config;
  TrainResult result;
  double train_seconds = 0;
};

RunConfig toy_config(const TempDir &dir) {
  auto c = load_run_config(source_path("data/toy/config.json"));
  c.paths.checkpoint = dir.file("checkpoint");
  c.paths.generations = dir.file("generations.jsonl");
  c.paths.report = dir.file("report.json");
  c.paths.anti_scam_output = dir.file("anti_scam.jsonl");
  return c;
}

struct Loaded {
  FrameLexicon lexicon;
  Tokenizer tokenizer;
  std::unique_ptr<TinyGpt> model;
};

Loaded load(const RunConfig &c) {
  auto ck = load_checkpoint(c.paths.checkpoint);
  return {load_lexicon(c.paths.lexicon), std::move(ck.tokenizer),
          TinyGpt::from_weights(ck.checkpoint.weights, c.model.kernels)};
}

// Mean SemCov of responses generated under `cond(i)` against the gold
// response frames of each pair.
double coverage(const Loaded &m, const RunConfig &c, const std::vector<ContextResponsePair> &pairs,
                const std::function<FrameSequence(std::size_t)> &cond) {
  double sum = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    Rng rng(derive_seed(c.generation.seed, i));
    const auto r = generate(*m.model, m.tokenizer, pairs[i].context, cond(i), c.generation, rng,
                            c.sequence.max_sequence_length);
    if (auto v = sem_cov(r.text, pairs[i].response_frames, m.lexicon)) {
      sum += *v;
      ++n;
    }
  }
  return n ? sum / static_cast<double>(n) : 0.0;
}

Outcome toy_training(ToyRun &run, const TempDir &dir) {
  run.config = toy_config(dir);
  const auto start = Clock::now();
  run.result = run_train(run.config);
  run.train_seconds = seconds_since(start);
  const auto &h = run.result.history;
  const double ratio = h.back().train_lm_loss / h.front().train_lm_loss;

  const auto m = load(run.config);
  const LexiconFrameTagger tagger(m.lexicon);
  const auto pairs = build_pairs(load_dialogues(run.config.paths.train).dialogues, tagger);
  const double cov = coverage(m, run.config, pairs, [&](std::size_t i) { return pairs[i].response_frames; });
  const double t = seconds_since(start);
  return {ratio < 0.5 && cov >= 0.6 && t < 600,
          "LM loss " + fmt(h.front().train_lm_loss) + " -> " + fmt(h.back().train_lm_loss) + " (ratio " +
              fmt(ratio) + "), train SemCov " + fmt(cov) + ", " + std::to_string(h.size()) + " epochs, " +
              fmt(t) + " s"};
}

Outcome frame_control(const ToyRun &run) {
  const auto start = Clock::now();
  const auto m = load(run.config);
  const LexiconFrameTagger tagger(m.lexicon);
  const auto train_pairs = build_pairs(load_dialogues(run.config.paths.train).dialogues, tagger);
  const auto test_pairs = build_pairs(load_dialogues(run.config.paths.test).dialogues, tagger);
  // Unrelated exemplar: first training response sharing no frame with the gold one.
  std::vector<FrameSequence> unrelated;
  for (const auto &p : test_pairs) {
    const auto gold = p.response_frames.label_set();
    const auto it = std::find_if(train_pairs.begin(), train_pairs.end(), [&](const auto &q) {
      const auto s = q.response_frames.label_set();
      return !s.empty() && jaccard(gold, s) == 0.0;
    });
    if (it == train_pairs.end()) return {false, "no unrelated exemplar for a test pair"};
    unrelated.push_back(it->response_frames);
  }
  const double gold = coverage(m, run.config, test_pairs, [&](std::size_t i) { return test_pairs[i].response_frames; });
  const double other = coverage(m, run.config, test_pairs, [&](std::size_t i) { return unrelated[i]; });
  const double t = seconds_since(start);
  return {gold - other >= 0.15 && t < 120,
          "test SemCov gold " + fmt(gold) + " vs unrelated " + fmt(other) + ", gap " + fmt(gold - other) + ", " +
              fmt(t) + " s"};
}

// 7 ------------------------------------------------------------------------
int run_cli(const std::string &args, const std::string &log) {
  const std::string cmd = std::string(EDGE_CLI_PATH) + " " + args + " >" + log + " 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

Outcome cli_determinism() {
  auto j = json::parse(read_file(source_path("data/toy/config.json")));
  std::vector<std::string> outputs;
  std::vector<std::unique_ptr<TempDir>> dirs;
  for (int r = 0; r < 2; ++r) {
    dirs.push_back(std::make_unique<TempDir>("determinism"));
    const auto &dir = *dirs.back();
    auto c = j;
    for (const char *k : {"lexicon", "train", "valid", "test"})
      c["paths"][k] = source_path(std::string("data/toy/") + c["paths"][k].get<std::string>());
    c["paths"]["checkpoint"] = dir.file("checkpoint");
    c["paths"]["generations"] = dir.file("generations.jsonl");
    c["paths"]["report"] = dir.file("report.json");
    c["paths"]["anti_scam_output"] = dir.file("anti_scam.jsonl");
    edge::testing::write_file(dir.file("config.json"), c.dump(2));
    const auto log = dir.file("log.txt");
    if (run_cli("train --config " + dir.file("config.json"), log) != 0)
      return {false, "train failed: " + read_file(log)};
    if (run_cli("generate --config " + dir.file("config.json"), log) != 0)
      return {false, "generate failed: " + read_file(log)};
    outputs.push_back(read_file(dir.file("generations.jsonl")));
  }
  const auto lines = std::count(outputs[0].begin(), outputs[0].end(), '\n');
  return {!outputs[0].empty() && outputs[0] == outputs[1],
          std::to_string(lines) + " lines, " + (outputs[0] == outputs[1] ? "byte-identical" : "differ")};
}

// 8 ------------------------------------------------------------------------
Outcome anti_scam(const ToyRun &run) {
  const auto n = run_anti_scam(run.config, source_path("data/anti_scam/emails.jsonl"),
                               source_path("data/anti_scam/exemplars.jsonl"));
  const auto serial_out = read_file(run.config.paths.anti_scam_output);
  auto threaded = run.config;
  threaded.paths.anti_scam_output += ".jobs";
  run_anti_scam(threaded, source_path("data/anti_scam/emails.jsonl"),
                source_path("data/anti_scam/exemplars.jsonl"), 3);
  const bool same = read_file(threaded.paths.anti_scam_output) == serial_out;
  std::ifstream in(run.config.paths.anti_scam_output);
  std::string line;
  std::size_t responses = 0, with_frames = 0, emails = 0, nonempty = 0;
  std::set<std::string> intents;
  while (std::getline(in, line)) {
    ++emails;
    const auto j = json::parse(line);
    for (const auto &[intent, arr] : j.at("responses").items()) {
      intents.insert(intent);
      for (const auto &r : arr) {
        ++responses;
        with_frames += !r.at("frames").empty();
        nonempty += !r.at("response").get<std::string>().empty();
      }
    }
  }
  return {n == 100 && responses == 100 && with_frames == 100 && nonempty == 100 && intents.size() == 5 && same,
          std::to_string(responses) + " responses over " + std::to_string(emails) + " emails and " +
              std::to_string(intents.size()) + " intents, " + std::to_string(with_frames) + " with frames, --jobs 3 output " +
              (same ? "identical" : "differs")};
}

}  // namespace

int main() {
  report(1, "golden frame extraction", golden_frames);
  report(2, "noising statistics", noising_statistics);
  report(3, "metric oracles", metric_oracles);
  report(4, "sequence layout", sequence_layout);
  TempDir dir("acceptance");
  ToyRun run;
  bool trained = false;
  report(5, "toy training", [&] {
    auto o = toy_training(run, dir);
    trained = true;
    return o;
  });
  report(6, "frame control", [&]() -> Outcome {
    if (!trained) return {false, "no trained model"};
    return frame_control(run);
  });
  report(7, "cli determinism", cli_determinism);
  report(8, "anti-scam generation", [&]() -> Outcome {
    if (!trained) return {false, "no trained model"};
    return anti_scam(run);
  });
  return failures == 0 ? 0 : 1;
}
