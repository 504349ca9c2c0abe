// src/app.cc

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

#include "edge/app.h"

#include <exception>
#include <filesystem>
#include <fstream>
#include <thread>

#include "edge/corpus.h"
#include "edge/error.h"
#include "edge/generation.h"
#include "edge/retrieval.h"
#include "edge/text.h"
#include "edge/tiny_gpt.h"

namespace edge {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void require_inputs(const std::vector<std::pair<std::string, std::string>> &named) {
  std::string missing;
  for (const auto &[name, p] : named) {
    if (p.empty())
      missing += (missing.empty() ? "" : "; ") + name + " is not set";
    else if (!fs::exists(p))
      missing += (missing.empty() ? "" : "; ") + name + " does not exist: " + p;
  }
  if (!missing.empty()) throw ConfigError(missing);
}

void require_outputs(const std::vector<std::pair<std::string, std::string>> &named) {
  for (const auto &[name, p] : named)
    if (p.empty()) throw ConfigError(name + " is not set");
}

std::ofstream open_output(const std::string &path) {
  const auto parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  return out;
}

std::vector<ContextResponsePair> load_pairs(const std::string &path, const FrameExtractor &tagger) {
  return build_pairs(load_dialogues(path).dialogues, tagger);
}

struct LoadedModel {
  Tokenizer tokenizer;
  std::unique_ptr<TinyGpt> model;
};

LoadedModel load_model(const RunConfig &config) {
  auto loaded = load_checkpoint(config.paths.checkpoint);
  LoadedModel m{std::move(loaded.tokenizer),
                TinyGpt::from_weights(loaded.checkpoint.weights, config.model.kernels)};
  if (m.model->vocab_size() != m.tokenizer.size())
    throw Error("checkpoint " + config.paths.checkpoint + ": weights and vocabulary disagree");
  return m;
}

json record_json(const GeneratedResponse &r, const std::string &exemplar) {
  RunRecord rec;
  rec.context = r.context;
  rec.exemplar = exemplar;
  rec.frames = r.frames.labels();
  rec.response = r.text;
  rec.seed = r.seed;
  return to_json(rec);
}

}  // namespace

std::string sized_output_path(const std::string &path, std::size_t size) {
  fs::path p(path);
  const auto ext = p.extension().string();
  p.replace_extension();
  return p.string() + "." + std::to_string(size) + (ext.empty() ? ".jsonl" : ext);
}

std::size_t run_extract_frames(const std::string &input, const std::string &lexicon_path,
                               const std::string &output, bool emit_pronouns) {
  require_inputs({{"--input", input}, {"--lexicon", lexicon_path}});
  require_outputs({{"--output", output}});
  const auto lexicon = load_lexicon(lexicon_path);
  const LexiconFrameTagger tagger(lexicon, {emit_pronouns});
  std::ifstream in(input);
  if (!in) throw Error("cannot open " + input);
  auto out = open_output(output);
  std::string line;
  std::size_t lineno = 0, written = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty()) continue;
    std::string text = t;
    if (t.front() == '{') {
      try {
        text = json::parse(t).at("text").get<std::string>();
      } catch (const json::exception &e) {
        throw ParseError(input, lineno, e.what());
      }
    }
    out << json{{"text", text}, {"frames", tagger.extract(text).labels()}}.dump() << '\n';
    ++written;
  }
  return written;
}

TrainResult run_train(const RunConfig &config) {
  require_inputs({{"paths.lexicon", config.paths.lexicon}, {"paths.train", config.paths.train}});
  if (!config.paths.valid.empty()) require_inputs({{"paths.valid", config.paths.valid}});
  require_outputs({{"paths.checkpoint", config.paths.checkpoint}});

  const auto lexicon = load_lexicon(config.paths.lexicon);
  const LexiconFrameTagger tagger(lexicon, {config.pronoun_frames});
  const auto train_pairs = load_pairs(config.paths.train, tagger);
  if (train_pairs.empty()) throw Error("no training pairs in " + config.paths.train);
  std::vector<ContextResponsePair> valid_pairs;
  if (!config.paths.valid.empty()) valid_pairs = load_pairs(config.paths.valid, tagger);

  std::vector<std::string> texts;
  for (const auto &d : load_dialogues(config.paths.train).dialogues)
    for (const auto &u : d.turns) texts.push_back(u.text);
  auto tokenizer = Tokenizer::build(texts, config.min_count);
  const auto vocab = frame_vocabulary(lexicon);
  tokenizer.add_frames(vocab);

  auto model_cfg = config.model;
  model_cfg.vocab_size = tokenizer.size();
  TinyGpt model(model_cfg);

  TrainInputs in;
  in.train = &train_pairs;
  in.valid = &valid_pairs;
  in.frame_vocab.assign(vocab.begin(), vocab.end());
  in.tokenizer = &tokenizer;
  in.limits = config.sequence;
  in.noise = config.noise;
  in.config = config.train;
  in.config_snapshot = config.raw;
  auto result = train(in, model);
  save_checkpoint(config.paths.checkpoint, result.best, tokenizer);
  return result;
}

std::vector<std::string> run_generate(const RunConfig &config, const std::string &context_file) {
  require_inputs({{"paths.lexicon", config.paths.lexicon},
                  {"paths.checkpoint", config.paths.checkpoint}});
  if (context_file.empty())
    require_inputs({{"paths.test", config.paths.test}});
  else
    require_inputs({{"--context-file", context_file}});
  if (config.exemplar_source == ExemplarSource::kRetrieval)
    require_inputs({{"paths.train", config.paths.train}});
  if (config.exemplar_source == ExemplarSource::kGold && !context_file.empty())
    throw ConfigError("--context-file needs generation.exemplar_source = \"retrieval\"");
  require_outputs({{"paths.generations", config.paths.generations}});

  const auto lexicon = load_lexicon(config.paths.lexicon);
  const LexiconFrameTagger tagger(lexicon, {config.pronoun_frames});
  const auto m = load_model(config);
  const std::size_t max_len = config.sequence.max_sequence_length;

  std::vector<ContextResponsePair> queries;
  if (context_file.empty()) {
    queries = load_pairs(config.paths.test, tagger);
  } else {
    std::ifstream in(context_file);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (trim(line).empty()) continue;
      ContextResponsePair q;
      try {
        const auto turns = json::parse(line).at("context").get<std::vector<std::string>>();
        Speaker s = turns.size() % 2 == 1 ? Speaker::kA : Speaker::kB;
        for (const auto &t : turns) {
          q.context.push_back({s, to_lower(t)});
          s = other(s);
        }
      } catch (const json::exception &e) {
        throw ParseError(context_file, lineno, e.what());
      }
      if (q.context.empty()) throw ParseError(context_file, lineno, "empty context");
      queries.push_back(std::move(q));
    }
  }

  std::uint64_t counter = 0;
  auto gen_one = [&](const ContextResponsePair &q, const FrameSequence &frames) {
    const auto seed = derive_seed(config.generation.seed, counter++);
    auto cfg = config.generation;
    cfg.seed = seed;
    return generate_samples(*m.model, m.tokenizer, q.context, frames, cfg, max_len);
  };

  std::vector<std::string> written;
  if (config.exemplar_source == ExemplarSource::kGold) {
    auto out = open_output(config.paths.generations);
    for (const auto &q : queries)
      for (const auto &r : gen_one(q, q.response_frames))
        out << record_json(r, q.response.text).dump() << '\n';
    written.push_back(config.paths.generations);
    return written;
  }

  std::shared_ptr<const CandidateScorer> scorer;
  if (!config.reranker_url.empty())
    scorer = std::make_shared<HttpRerankerScorer>(config.reranker_url, config.reranker_fallback);
  const auto index = build_index(load_pairs(config.paths.train, tagger), lexicon, scorer);
  for (std::size_t size : config.subset_sizes) {
    const auto path = sized_output_path(config.paths.generations, size);
    auto out = open_output(path);
    counter = 0;
    for (const auto &q : queries) {
      std::vector<std::string> ctx;
      for (const auto &u : q.context) ctx.push_back(u.text);
      const auto ranked = retrieve(index, ctx, index.size());
      for (const auto &c : select_diverse_subset(ranked, index, size)) {
        const auto &e = index.entries()[c.entry];
        for (const auto &r : gen_one(q, e.frames)) out << record_json(r, e.text).dump() << '\n';
      }
    }
    written.push_back(path);
  }
  return written;
}

MetricsReport run_evaluate(const RunConfig &config, const std::string &run_file) {
  require_inputs({{"paths.lexicon", config.paths.lexicon}, {"--run-file", run_file}});
  require_outputs({{"paths.report", config.paths.report}});
  const auto lexicon = load_lexicon(config.paths.lexicon);
  const auto report = evaluate_run(load_run_records(run_file), lexicon);
  auto out = open_output(config.paths.report);
  out << report.to_json().dump(2) << '\n';
  return report;
}

std::size_t run_anti_scam(const RunConfig &config, const std::string &emails_path,
                          const std::string &exemplars_path, std::size_t jobs) {
  require_inputs({{"paths.lexicon", config.paths.lexicon},
                  {"paths.checkpoint", config.paths.checkpoint},
                  {"--emails", emails_path},
                  {"--exemplars", exemplars_path}});
  require_outputs({{"paths.anti_scam_output", config.paths.anti_scam_output}});
  if (jobs < 1) throw ConfigError("--jobs must be >= 1");
  const auto lexicon = load_lexicon(config.paths.lexicon);
  const LexiconFrameTagger tagger(lexicon, {config.pronoun_frames});
  const auto emails = load_scam_emails(emails_path);
  const auto exemplars = load_exemplars(exemplars_path, tagger);
  if (emails.empty()) throw Error("no emails in " + emails_path);
  const auto m = load_model(config);
  if (!m.model->reentrant()) jobs = 1;

  std::vector<std::string> lines(emails.size());
  std::vector<std::size_t> counts(emails.size(), 0);
  auto one = [&](std::size_t i) {
    auto cfg = config.generation;
    cfg.seed = derive_seed(config.generation.seed, i);
    const auto grouped = generate_controlled(*m.model, m.tokenizer, emails[i], exemplars, cfg,
                                             config.sequence.max_sequence_length);
    json by_intent = json::object();
    for (const auto &[intent, rs] : grouped) {
      json arr = json::array();
      for (const auto &r : rs) {
        arr.push_back({{"exemplar", *r.exemplar},
                       {"frames", r.frames.labels()},
                       {"response", r.text},
                       {"seed", r.seed}});
        ++counts[i];
      }
      by_intent[intent] = std::move(arr);
    }
    lines[i] = json{{"email_id", emails[i].id}, {"email", emails[i].body}, {"responses", by_intent}}.dump();
  };

  // Emails are independent; worker w takes every jobs-th one.
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> workers;
  for (std::size_t w = 0; w < std::min(jobs, emails.size()); ++w)
    workers.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < emails.size(); i += jobs) one(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto &t : workers) t.join();
  for (const auto &e : errors)
    if (e) std::rethrow_exception(e);

  auto out = open_output(config.paths.anti_scam_output);
  for (const auto &l : lines) out << l << '\n';
  std::size_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

}  // namespace edge
