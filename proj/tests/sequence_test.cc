// tests/sequence_test.cc

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

#include <doctest.h>

#include "edge/error.h"
#include "edge/sequence.h"
#include "test_util.h"

using namespace edge;
using edge::testing::random_sentence;
using edge::testing::toy_tokenizer;

namespace {

const std::set<std::string> kFrames = {"FOOD", "DESIRING", "WHY"};

}  // namespace

TEST_SUITE("sequence") {

TEST_CASE("training layout") {
  const auto tok = toy_tokenizer(kFrames);
  const std::vector<Utterance> ctx = {{Speaker::kA, "alpha bravo"}, {Speaker::kB, "charlie"}};
  const auto frames = FrameSequence::from_labels({"FOOD", "WHY"});
  const auto ex = build_training_sequence(ctx, frames, {Speaker::kA, "delta echo"}, tok, {});
  const auto a = tok.encode("alpha bravo"), c = tok.encode("charlie"), r = tok.encode("delta echo");
  const std::vector<TokenId> expect = {SpecialTokens::kBos, SpecialTokens::kSpeakerA, a[0], a[1],
                                       SpecialTokens::kSpeakerB, c[0], SpecialTokens::kBof,
                                       *tok.frame_id("FOOD"), *tok.frame_id("WHY"),
                                       SpecialTokens::kBor, r[0], r[1], SpecialTokens::kEos};
  CHECK(ex.token_ids == expect);
  CHECK(ex.bof_position == 6);
  CHECK(ex.bor_position == 9);
  CHECK(ex.role_ids == std::vector<int>{0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0});
  for (std::size_t i = 0; i < ex.size(); ++i) {
    CHECK(ex.position_ids[i] == static_cast<int>(i));
    CHECK(ex.lm_labels[i] == (i > ex.bor_position ? ex.token_ids[i] : kIgnoreLabel));
  }
  CHECK(ex.cls_position() == ex.size() - 1);
}

TEST_CASE("unmasked frame labels") {
  const auto tok = toy_tokenizer(kFrames);
  SequenceLimits lim;
  lim.mask_frame_labels = false;
  const auto ex = build_training_sequence({{Speaker::kA, "alpha"}}, FrameSequence::from_labels({"FOOD"}),
                                          {Speaker::kB, "bravo"}, tok, lim);
  CHECK(ex.lm_labels[ex.bof_position + 1] == *tok.frame_id("FOOD"));
}

TEST_CASE("inference prompt ends at <bor> with the opposite role") {
  const auto tok = toy_tokenizer(kFrames);
  const auto ex = build_inference_prompt({{Speaker::kB, "alpha"}}, FrameSequence::from_labels({"FOOD"}),
                                         tok, {});
  CHECK(ex.token_ids.back() == SpecialTokens::kBor);
  CHECK(ex.role_ids.back() == static_cast<int>(Speaker::kA));
  for (auto l : ex.lm_labels) CHECK(l == kIgnoreLabel);
}

TEST_CASE("truncation drops the oldest turns first") {
  const auto tok = toy_tokenizer(kFrames);
  const std::vector<Utterance> ctx = {{Speaker::kA, "alpha alpha alpha"},
                                      {Speaker::kB, "bravo bravo"},
                                      {Speaker::kA, "charlie"}};
  SequenceLimits lim;
  // <bos> <spk> charlie <bof> FOOD <bor> delta <eos> = 8 tokens
  lim.max_sequence_length = 8;
  auto ex = build_training_sequence(ctx, FrameSequence::from_labels({"FOOD"}), {Speaker::kB, "delta"}, tok, lim);
  CHECK(ex.size() == 8);
  CHECK(ex.token_ids[2] == tok.encode("charlie")[0]);
  lim.max_sequence_length = 11;
  ex = build_training_sequence(ctx, FrameSequence::from_labels({"FOOD"}), {Speaker::kB, "delta"}, tok, lim);
  CHECK(ex.size() == 11);
  CHECK(ex.token_ids[1] == SpecialTokens::kSpeakerB);
  // the last utterance is left-truncated when it alone does not fit
  const auto one = build_training_sequence({{Speaker::kA, "alpha bravo charlie"}},
                                           FrameSequence::from_labels({"FOOD"}),
                                           {Speaker::kB, "delta"}, tok, SequenceLimits{8, true});
  CHECK(one.size() == 8);
  CHECK(one.token_ids[2] == tok.encode("charlie")[0]);
}

TEST_CASE("errors") {
  const auto tok = toy_tokenizer(kFrames);
  const auto frames = FrameSequence::from_labels({"FOOD"});
  CHECK_THROWS_AS(build_training_sequence({}, frames, {Speaker::kB, "alpha"}, tok, {}), Error);
  CHECK_THROWS_AS(build_training_sequence({{Speaker::kA, "a"}}, FrameSequence::from_labels({"NOPE"}),
                                          {Speaker::kB, "alpha"}, tok, {}),
                  Error);
  SequenceLimits tiny{5, true};
  CHECK_THROWS_AS(build_training_sequence({{Speaker::kA, "a"}}, frames, {Speaker::kB, "alpha bravo"}, tok, tiny),
                  Error);
  ContextResponsePair p;
  p.context = {{Speaker::kA, "alpha"}};
  p.response = {Speaker::kB, "bravo"};
  CHECK_THROWS_AS(build_classification_pair(p, frames, p.response, tok, {}), Error);
}

TEST_CASE("classification pair shares its prefix") {
  const auto tok = toy_tokenizer(kFrames);
  ContextResponsePair p;
  p.context = {{Speaker::kA, "alpha bravo charlie"}, {Speaker::kB, "delta echo"}};
  p.response = {Speaker::kA, "golf"};
  const auto frames = FrameSequence::from_labels({"FOOD"});
  const auto [gold, wrong] =
      build_classification_pair(p, frames, {Speaker::kB, "hotel india juliet"}, tok, {12, true});
  CHECK(gold.cls_label == ClassLabel::kCorrect);
  CHECK(wrong.cls_label == ClassLabel::kDistractor);
  REQUIRE(gold.bor_position == wrong.bor_position);
  CHECK(std::equal(gold.token_ids.begin(), gold.token_ids.begin() + gold.bor_position + 1,
                   wrong.token_ids.begin()));
  CHECK(wrong.size() <= 12);
}

TEST_CASE("property: label count and frame round-trip on random pairs") {
  const auto tok = toy_tokenizer(kFrames);
  const std::vector<std::string> labels(kFrames.begin(), kFrames.end());
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    std::vector<Utterance> ctx;
    const std::size_t turns = 1 + rng.uniform_int(5);
    for (std::size_t i = 0; i < turns; ++i)
      ctx.push_back({i % 2 ? Speaker::kB : Speaker::kA, random_sentence(rng, 1, 12)});
    std::vector<std::string> f;
    for (std::size_t i = rng.uniform_int(6); i > 0; --i) f.push_back(labels[rng.uniform_int(labels.size())]);
    const Utterance resp{other(ctx.back().speaker), random_sentence(rng, 1, 10)};
    const auto ex = build_training_sequence(ctx, FrameSequence::from_labels(f), resp, tok, {32, true});
    CHECK(ex.size() <= 32);
    std::size_t n = 0;
    for (auto l : ex.lm_labels) n += l != kIgnoreLabel;
    CHECK(n == tok.encode(resp.text).size() + 1);
    std::vector<std::string> back;
    for (auto id : ex.frame_block()) back.push_back(*tok.frame_label(id));
    CHECK(back == f);
  }
}

}
