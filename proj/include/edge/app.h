// include/edge/app.h

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

#ifndef EDGE_APP_H_
#define EDGE_APP_H_

#include <map>
#include <string>
#include <vector>

#include "edge/config.h"
#include "edge/evaluation.h"
#include "edge/trainer.h"

namespace edge {

/// Tags each input line (plain text, or a JSON object with "text") and
/// writes JSONL {"text", "frames"}. Returns the number of lines written.
std::size_t run_extract_frames(const std::string &input, const std::string &lexicon,
                               const std::string &output, bool emit_pronouns = false);

/// Builds the vocabulary, trains TinyGpt and writes the checkpoint.
TrainResult run_train(const RunConfig &config);

/// Generates for every test context (or every {"context": [..]} line of
/// `context_file`). Gold mode writes paths.generations; retrieval mode
/// writes one file per subset size. Returns the files written.
std::vector<std::string> run_generate(const RunConfig &config, const std::string &context_file = {});

/// Scores a generations file and writes paths.report.
MetricsReport run_evaluate(const RunConfig &config, const std::string &run_file);

/// Every (email, exemplar) pair; writes one JSONL line per email with
/// responses grouped by intent. Returns the number of responses. With
/// jobs > 1 emails are generated on that many threads; output is identical.
std::size_t run_anti_scam(const RunConfig &config, const std::string &emails,
                          const std::string &exemplars, std::size_t jobs = 1);

/// "out/gen.jsonl", 5 -> "out/gen.5.jsonl"
std::string sized_output_path(const std::string &path, std::size_t size);

}  // namespace edge

#endif  // EDGE_APP_H_
