// tests/trainer_test.cc

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

#include <cmath>
#include <map>

#include <doctest.h>

#include "edge/error.h"
#include "edge/trainer.h"
#include "test_util.h"

using namespace edge;
using edge::testing::FixedModel;
using edge::testing::TempDir;
using edge::testing::toy_tokenizer;
using edge::testing::toy_words;

namespace {

const std::set<std::string> kFrames = {"A", "B", "C", "D"};

std::vector<ContextResponsePair> toy_pairs(std::size_t n) {
  std::vector<ContextResponsePair> out;
  const auto &w = toy_words();
  for (std::size_t i = 0; i < n; ++i) {
    ContextResponsePair p;
    p.context = {{Speaker::kA, w[i % 10] + " " + w[(i + 3) % 10]}};
    p.response = {Speaker::kB, w[(i + 1) % 10] + " " + w[(i * 7 + 2) % 10]};
    p.response_frames = FrameSequence::from_labels({std::string(1, static_cast<char>('A' + i % 4)), "B"});
    p.dialogue_id = std::to_string(i);
    p.response_turn = 1;
    out.push_back(p);
  }
  return out;
}

struct Setup {
  std::vector<ContextResponsePair> pairs = toy_pairs(12);
  Tokenizer tok = toy_tokenizer(kFrames);
  TrainInputs in;

  Setup() {
    in.train = &pairs;
    in.frame_vocab = {kFrames.begin(), kFrames.end()};
    in.tokenizer = &tok;
    in.limits.max_sequence_length = 32;
    in.config.max_epochs = 3;
    in.config.learning_rate = 1e-2;
    in.config.seed = 7;
    in.noise.seed = 8;
  }
  TinyGpt model() const {
    TinyGptConfig c;
    c.vocab_size = tok.size();
    c.layers = 1;
    c.dim = 8;
    c.heads = 2;
    c.max_context = 32;
    c.seed = 9;
    c.kernels = KernelBackend::kSerial;
    return TinyGpt(c);
  }
};

}  // namespace

TEST_SUITE("trainer") {

TEST_CASE("early stopping") {
  EarlyStopping s(2);
  std::size_t epochs = 0;
  for (double loss : {3.0, 2.5, 2.6, 2.7, 1.0}) {
    ++epochs;
    s.update(loss);
    if (s.should_stop()) break;
  }
  CHECK(epochs == 4);
  CHECK(s.best_epoch() == 2);
  CHECK(s.best_loss() == 2.5);
  EarlyStopping t(1);
  t.update(1.0);
  CHECK_FALSE(t.update(1.0));  // equal is not an improvement
  CHECK(t.should_stop());
}

TEST_CASE("config validation") {
  TrainingConfig c;
  CHECK_NOTHROW(c.validate());
  c.max_epochs = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.batch_size = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.num_candidates = 1;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.learning_rate = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("empty training set is an error") {
  Setup s;
  std::vector<ContextResponsePair> none;
  s.in.train = &none;
  auto m = s.model();
  CHECK_THROWS_AS(train(s.in, m), Error);
}

TEST_CASE("distractor sampling") {
  Rng rng(1);
  auto pairs = toy_pairs(2);
  for (int i = 0; i < 20; ++i) CHECK(sample_distractor(pairs, 0, rng).text == pairs[1].response.text);
  pairs[1].response = pairs[0].response;
  CHECK_THROWS_AS(sample_distractor(pairs, 0, rng), Error);
  CHECK_THROWS_AS(sample_distractor(pairs, 5, rng), Error);

  // uniform over the other 10 responses
  std::vector<ContextResponsePair> many(11);
  for (std::size_t i = 0; i < many.size(); ++i) many[i].response.text = "r" + std::to_string(i);
  std::map<std::string, int> counts;
  for (int i = 0; i < 10000; ++i) ++counts[sample_distractor(many, 4, rng).text];
  CHECK(counts.size() == 10);
  CHECK(counts.count("r4") == 0);
  for (const auto &[_, c] : counts) CHECK((c > 850 && c < 1150));
}

TEST_CASE("validate under a uniform model is ln V") {
  Setup s;
  const std::size_t V = s.tok.size();
  const FixedModel uniform(std::vector<double>(V, 1.0 / static_cast<double>(V)));
  CHECK(validate(s.pairs, uniform, s.tok, s.in.limits) ==
        doctest::Approx(std::log(static_cast<double>(V))).epsilon(1e-12));
  CHECK_THROWS_AS(validate({}, uniform, s.tok, s.in.limits), Error);
}

TEST_CASE("noise is re-sampled every epoch") {
  Setup s;
  s.in.noise.drop_rate = 0.5;
  s.in.noise.shuffle_prob = 0.5;
  s.in.noise.add_ratio = 1.0;
  s.in.config.early_stop_patience = 100;
  std::map<std::size_t, std::map<std::size_t, std::vector<std::string>>> seen;
  TrainHooks hooks;
  hooks.on_noised = [&](std::size_t epoch, std::size_t idx, const FrameSequence &f) {
    seen[epoch][idx] = f.labels();
  };
  auto m = s.model();
  const auto r = train(s.in, m, hooks);
  CHECK(r.history.size() == 3);
  REQUIRE(seen.size() == 3);
  std::size_t differ = 0;
  for (std::size_t i = 0; i < s.pairs.size(); ++i) differ += seen[1][i] != seen[2][i];
  CHECK(differ > 0);
}

TEST_CASE("training is deterministic and loss falls") {
  Setup s;
  auto m1 = s.model(), m2 = s.model();
  const auto r1 = train(s.in, m1);
  const auto r2 = train(s.in, m2);
  REQUIRE(r1.history.size() == r2.history.size());
  for (std::size_t i = 0; i < r1.history.size(); ++i)
    CHECK(r1.history[i].train_lm_loss == r2.history[i].train_lm_loss);
  CHECK(r1.best.weights == r2.best.weights);
  CHECK(r1.history.back().train_lm_loss < r1.history.front().train_lm_loss);
  CHECK(m1.save_weights() == r1.best.weights);
}

TEST_CASE("oversized examples are rejected and counted") {
  Setup s;
  s.pairs[0].response.text = "alpha alpha alpha alpha alpha alpha alpha alpha alpha alpha";
  s.in.limits.max_sequence_length = 12;
  auto m = s.model();
  const auto r = train(s.in, m);
  CHECK(r.history[0].rejected >= 1);
}

TEST_CASE("checkpoint round trip reproduces the validation loss") {
  Setup s;
  s.in.config.max_epochs = 1;
  auto m = s.model();
  const auto r = train(s.in, m);
  TempDir dir("ckpt");
  save_checkpoint(dir.file("c"), r.best, s.tok);
  const auto loaded = load_checkpoint(dir.file("c"));
  CHECK(loaded.tokenizer.tokens() == s.tok.tokens());
  CHECK(loaded.checkpoint.epoch == r.best.epoch);
  const auto back = TinyGpt::from_weights(loaded.checkpoint.weights, KernelBackend::kSerial);
  CHECK(validate(s.pairs, *back, loaded.tokenizer, s.in.limits) == r.best.val_loss);

  // a vocabulary that disagrees with the manifest is refused
  edge::testing::write_file(dir.file("c/weights/vocab.txt"), Tokenizer().serialize());
  CHECK_THROWS_AS(load_checkpoint(dir.file("c")), Error);
}

TEST_CASE("LM loss covers exactly the response and <eos>") {
  Setup s;
  auto m = s.model();
  const auto &p = s.pairs[0];
  const auto ex = build_training_sequence(p, p.response_frames, s.tok, s.in.limits);
  const LossWeights lm_only{1.0, 0.0};
  const auto l = m.accumulate_gradients({{ex}, 0}, lm_only, 0.0);
  CHECK(l.lm_tokens == s.tok.encode(p.response.text).size() + 1);
  const auto [sum, count] = sequence_nll(m.forward(ex), ex);
  CHECK(count == l.lm_tokens);
  CHECK(l.lm == doctest::Approx(sum / static_cast<double>(count)).epsilon(1e-12));
}

}
