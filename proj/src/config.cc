// src/config.cc

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

#include "edge/config.h"

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "edge/error.h"

namespace edge {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void flatten_into(const json &j, const std::string &prefix, json &out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object())
      flatten_into(*it, key, out);
    else
      out[key] = *it;
  }
}

using Setter = std::function<void(RunConfig &, const json &, const std::string &base)>;

std::string resolve(const std::string &base, const std::string &p) {
  if (p.empty()) return p;
  const fs::path path(p);
  return (path.is_absolute() ? path : fs::path(base) / path).lexically_normal().string();
}

template <typename T, typename F>
Setter num(F field) {
  return [field](RunConfig &c, const json &v, const std::string &) {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ConfigError("expected a boolean");
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw ConfigError("expected a number");
    } else {
      if (!v.is_number_unsigned()) throw ConfigError("expected a non-negative integer");
    }
    field(c) = v.get<T>();
  };
}

template <typename F>
Setter path(F field) {
  return [field](RunConfig &c, const json &v, const std::string &base) {
    if (!v.is_string()) throw ConfigError("expected a string path");
    field(c) = resolve(base, v.get<std::string>());
  };
}

const std::map<std::string, Setter> &setters() {
  static const std::map<std::string, Setter> table = {
      {"seed", num<std::uint64_t>([](RunConfig &c) -> auto & { return c.seed; })},
      {"paths.lexicon", path([](RunConfig &c) -> auto & { return c.paths.lexicon; })},
      {"paths.train", path([](RunConfig &c) -> auto & { return c.paths.train; })},
      {"paths.valid", path([](RunConfig &c) -> auto & { return c.paths.valid; })},
      {"paths.test", path([](RunConfig &c) -> auto & { return c.paths.test; })},
      {"paths.checkpoint", path([](RunConfig &c) -> auto & { return c.paths.checkpoint; })},
      {"paths.generations", path([](RunConfig &c) -> auto & { return c.paths.generations; })},
      {"paths.report", path([](RunConfig &c) -> auto & { return c.paths.report; })},
      {"paths.anti_scam_output",
       path([](RunConfig &c) -> auto & { return c.paths.anti_scam_output; })},
      {"model.layers", num<std::size_t>([](RunConfig &c) -> auto & { return c.model.layers; })},
      {"model.dim", num<std::size_t>([](RunConfig &c) -> auto & { return c.model.dim; })},
      {"model.heads", num<std::size_t>([](RunConfig &c) -> auto & { return c.model.heads; })},
      {"model.max_context",
       num<std::size_t>([](RunConfig &c) -> auto & { return c.model.max_context; })},
      {"model.init_std", num<double>([](RunConfig &c) -> auto & { return c.model.init_std; })},
      {"model.kernels",
       [](RunConfig &c, const json &v, const std::string &) {
         const auto s = v.is_string() ? v.get<std::string>() : std::string();
         if (s == "serial")
           c.model.kernels = KernelBackend::kSerial;
         else if (s == "parallel")
           c.model.kernels = KernelBackend::kParallel;
         else
           throw ConfigError("expected \"serial\" or \"parallel\"");
       }},
      {"noise.drop_rate", num<double>([](RunConfig &c) -> auto & { return c.noise.drop_rate; })},
      {"noise.shuffle_prob",
       num<double>([](RunConfig &c) -> auto & { return c.noise.shuffle_prob; })},
      {"noise.add_ratio", num<double>([](RunConfig &c) -> auto & { return c.noise.add_ratio; })},
      {"train.learning_rate",
       num<double>([](RunConfig &c) -> auto & { return c.train.learning_rate; })},
      {"train.weight_decay",
       num<double>([](RunConfig &c) -> auto & { return c.train.weight_decay; })},
      {"train.batch_size",
       num<std::size_t>([](RunConfig &c) -> auto & { return c.train.batch_size; })},
      {"train.max_epochs",
       num<std::size_t>([](RunConfig &c) -> auto & { return c.train.max_epochs; })},
      {"train.num_candidates",
       num<std::size_t>([](RunConfig &c) -> auto & { return c.train.num_candidates; })},
      {"train.lm_loss_weight",
       num<double>([](RunConfig &c) -> auto & { return c.train.lm_loss_weight; })},
      {"train.cls_loss_weight",
       num<double>([](RunConfig &c) -> auto & { return c.train.cls_loss_weight; })},
      {"train.early_stop_patience",
       num<std::size_t>([](RunConfig &c) -> auto & { return c.train.early_stop_patience; })},
      {"train.max_grad_norm",
       num<double>([](RunConfig &c) -> auto & { return c.train.max_grad_norm; })},
      {"train.linear_decay",
       num<bool>([](RunConfig &c) -> auto & { return c.train.linear_decay; })},
      {"train.min_count", num<std::size_t>([](RunConfig &c) -> auto & { return c.min_count; })},
      {"sequence.max_sequence_length",
       num<std::size_t>([](RunConfig &c) -> auto & { return c.sequence.max_sequence_length; })},
      {"sequence.mask_frame_labels",
       num<bool>([](RunConfig &c) -> auto & { return c.sequence.mask_frame_labels; })},
      {"frames.emit_pronouns", num<bool>([](RunConfig &c) -> auto & { return c.pronoun_frames; })},
      {"generation.top_p", num<double>([](RunConfig &c) -> auto & { return c.generation.top_p; })},
      {"generation.min_length",
       num<std::size_t>([](RunConfig &c) -> auto & { return c.generation.min_length; })},
      {"generation.max_length",
       num<std::size_t>([](RunConfig &c) -> auto & { return c.generation.max_length; })},
      {"generation.num_samples",
       num<std::size_t>([](RunConfig &c) -> auto & { return c.generation.num_samples; })},
      {"generation.exemplar_source",
       [](RunConfig &c, const json &v, const std::string &) {
         const auto s = v.is_string() ? v.get<std::string>() : std::string();
         if (s == "gold")
           c.exemplar_source = ExemplarSource::kGold;
         else if (s == "retrieval")
           c.exemplar_source = ExemplarSource::kRetrieval;
         else
           throw ConfigError("expected \"gold\" or \"retrieval\"");
       }},
      {"generation.subset_sizes",
       [](RunConfig &c, const json &v, const std::string &) {
         if (!v.is_array() || v.empty()) throw ConfigError("expected a non-empty array");
         c.subset_sizes.clear();
         for (const auto &x : v) {
           if (!x.is_number_unsigned() || x.get<std::size_t>() == 0)
             throw ConfigError("subset sizes must be positive integers");
           c.subset_sizes.push_back(x.get<std::size_t>());
         }
       }},
      {"retrieval.reranker_url",
       [](RunConfig &c, const json &v, const std::string &) {
         if (!v.is_string()) throw ConfigError("expected a string");
         c.reranker_url = v.get<std::string>();
       }},
      {"retrieval.reranker_fallback",
       num<bool>([](RunConfig &c) -> auto & { return c.reranker_fallback; })},
  };
  return table;
}

}  // namespace

json flatten_config(const json &j) {
  json out = json::object();
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  flatten_into(j, "", out);
  return out;
}

const std::vector<std::string> &known_config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto &[name, _] : setters()) k.push_back(name);
    return k;
  }();
  return keys;
}

RunConfig parse_run_config(const json &j, const std::string &base_dir) {
  const json flat = flatten_config(j);
  RunConfig c;
  std::vector<std::string> problems;
  std::vector<std::string> unknown;
  for (auto it = flat.begin(); it != flat.end(); ++it) {
    auto s = setters().find(it.key());
    if (s == setters().end()) {
      unknown.push_back(it.key());
      continue;
    }
    try {
      s->second(c, *it, base_dir);
    } catch (const std::exception &e) {
      problems.push_back(it.key() + ": " + e.what());
    }
  }
  if (!unknown.empty()) {
    std::string msg = "unknown config key(s):";
    for (const auto &k : unknown) msg += " " + k;
    problems.insert(problems.begin(), msg);
  }

  c.noise.seed = derive_seed(c.seed, 1);
  c.train.seed = derive_seed(c.seed, 2);
  c.model.seed = derive_seed(c.seed, 3);
  c.generation.seed = derive_seed(c.seed, 4);

  auto check = [&](const char *what, auto &&fn) {
    try {
      fn();
    } catch (const std::exception &e) {
      problems.push_back(std::string(what) + ": " + e.what());
    }
  };
  check("noise", [&] { c.noise.validate(); });
  check("train", [&] { c.train.validate(); });
  check("generation", [&] { c.generation.validate(); });
  if (c.model.layers == 0 || c.model.dim == 0 || c.model.heads == 0 ||
      c.model.dim % c.model.heads != 0)
    problems.push_back("model: layers, dim and heads must be positive and heads must divide dim");
  if (c.model.max_context < 8) problems.push_back("model.max_context must be >= 8");
  if (c.sequence.max_sequence_length > c.model.max_context)
    problems.push_back("sequence.max_sequence_length exceeds model.max_context");

  if (!problems.empty()) {
    std::string msg;
    for (const auto &p : problems) msg += (msg.empty() ? "" : "; ") + p;
    throw ConfigError(msg);
  }
  c.raw = flat;
  return c;
}

RunConfig load_run_config(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception &e) {
    throw ConfigError("config " + path + " is not valid JSON: " + e.what());
  }
  return parse_run_config(j, fs::path(path).parent_path().string().empty()
                                 ? "."
                                 : fs::path(path).parent_path().string());
}

}  // namespace edge
