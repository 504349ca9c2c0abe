// tools/edge_main.cc

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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "edge/app.h"
#include "edge/config.h"
#include "edge/error.h"

int main(int argc, char **argv) {
  CLI::App app{"Exemplar-conditioned dialogue generation with semantic frames"};
  app.require_subcommand(1);

  std::string input, lexicon, output;
  bool pronouns = false;
  auto *extract = app.add_subcommand("extract-frames", "Tag utterances with semantic frames");
  extract->add_option("--input", input, "Text or JSONL file")->required();
  extract->add_option("--lexicon", lexicon, "Lexical-unit TSV")->required();
  extract->add_option("--output", output, "JSONL output")->required();
  extract->add_flag("--pronouns", pronouns, "Emit pronoun frames");

  std::string config_path, context_file, run_file, emails, exemplars;
  auto *train = app.add_subcommand("train", "Train a model and write a checkpoint");
  train->add_option("--config", config_path)->required();

  auto *generate = app.add_subcommand("generate", "Generate responses for test contexts");
  generate->add_option("--config", config_path)->required();
  generate->add_option("--context-file", context_file, "JSONL of {\"context\": [...]}");

  auto *evaluate = app.add_subcommand("evaluate", "Score a generations file");
  evaluate->add_option("--config", config_path)->required();
  evaluate->add_option("--run-file", run_file)->required();

  auto *anti = app.add_subcommand("anti-scam", "Intent-controlled replies to scam emails");
  anti->add_option("--config", config_path)->required();
  anti->add_option("--emails", emails)->required();
  anti->add_option("--exemplars", exemplars)->required();
  std::size_t jobs = 1;
  anti->add_option("--jobs", jobs, "Threads generating emails in parallel")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*extract) {
      const auto n = edge::run_extract_frames(input, lexicon, output, pronouns);
      std::cerr << "wrote " << n << " lines to " << output << "\n";
      return 0;
    }
    const auto config = edge::load_run_config(config_path);
    if (*train) {
      const auto r = edge::run_train(config);
      for (const auto &e : r.history)
        std::cerr << "epoch " << e.epoch << " lm " << e.train_lm_loss << " cls "
                  << e.train_cls_loss << " val " << e.val_loss << "\n";
      std::cerr << "best epoch " << r.best.epoch << " -> " << config.paths.checkpoint << "\n";
    } else if (*generate) {
      for (const auto &f : edge::run_generate(config, context_file)) std::cerr << "wrote " << f << "\n";
    } else if (*evaluate) {
      std::cout << edge::run_evaluate(config, run_file).to_json().dump(2) << "\n";
    } else if (*anti) {
      const auto n = edge::run_anti_scam(config, emails, exemplars, jobs);
      std::cerr << "wrote " << n << " responses to " << config.paths.anti_scam_output << "\n";
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
