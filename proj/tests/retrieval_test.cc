// tests/retrieval_test.cc

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

#include <algorithm>
#include <thread>

#include <doctest.h>
#include <httplib.h>
#include <json.hpp>

#include "edge/error.h"
#include "edge/retrieval.h"
#include "test_util.h"

using namespace edge;

namespace {

FrameLexicon lexicon() {
  return parse_lexicon("pizza\tFOOD\nwant\tDESIRING\ncar\tVEHICLE\nbuy\tCOMMERCE-BUY\n");
}

std::vector<ContextResponsePair> pairs() {
  std::vector<ContextResponsePair> out;
  auto add = [&](std::string ctx, std::string resp) {
    ContextResponsePair p;
    p.context = {{Speaker::kA, std::move(ctx)}};
    p.response = {Speaker::kB, std::move(resp)};
    out.push_back(p);
  };
  add("what do you want for dinner", "i want pizza");
  add("where is the car", "buy a car");
  add("do you like music", "i want a car");
  add("nothing here", "ok");
  return out;
}

// Scores entries by their position, highest first, over HTTP.
class RerankServer {
 public:
  explicit RerankServer(int status) {
    server_.Post("/rank", [status](const httplib::Request &req, httplib::Response &res) {
      const auto body = nlohmann::json::parse(req.body);
      nlohmann::json scores = nlohmann::json::array();
      const auto n = body.at("candidates").size();
      for (std::size_t i = 0; i < n; ++i) scores.push_back(static_cast<double>(i));
      res.status = status;
      res.set_content(nlohmann::json{{"scores", scores}}.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~RerankServer() {
    server_.stop();
    thread_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

}  // namespace

TEST_SUITE("retrieval") {

TEST_CASE("jaccard") {
  using S = std::set<std::string>;
  CHECK(jaccard({}, {}) == 1.0);
  CHECK(jaccard(S{"A"}, {}) == 0.0);
  CHECK(jaccard(S{"A", "B"}, S{"B", "C"}) == doctest::Approx(1.0 / 3.0));
  CHECK(jaccard(S{"A", "B"}, S{"A", "B"}) == 1.0);
  Rng rng(1);
  for (int t = 0; t < 200; ++t) {
    S a, b;
    for (int i = 0; i < 5; ++i) {
      if (rng.bernoulli(0.5)) a.insert(std::string(1, static_cast<char>('A' + rng.uniform_int(8))));
      if (rng.bernoulli(0.5)) b.insert(std::string(1, static_cast<char>('A' + rng.uniform_int(8))));
    }
    const double j = jaccard(a, b);
    CHECK(j == jaccard(b, a));
    CHECK((j >= 0.0 && j <= 1.0));
  }
}

TEST_CASE("diverse subset rules") {
  using S = std::set<std::string>;
  // B overlaps A at exactly 0.5 and is excluded; C is disjoint.
  const std::vector<S> ranked = {{"X", "Y"}, {"X", "Y", "Z", "W"}, {"X", "Y", "Z"}, {"Q"}};
  CHECK(select_diverse_subset(ranked, 10) == std::vector<std::size_t>{0, 3});
  CHECK(select_diverse_subset(ranked, 1) == std::vector<std::size_t>{0});
  const std::vector<S> dup = {{"A"}, {"A"}, {}, {}};
  CHECK(select_diverse_subset(dup, 10) == std::vector<std::size_t>{0, 2});
  CHECK(select_diverse_subset(std::vector<S>{}, 3).empty());
}

TEST_CASE("property: diverse subset agrees with an exhaustive oracle") {
  Rng rng(2);
  for (int pool = 0; pool < 200; ++pool) {
    std::vector<std::set<std::string>> ranked(1 + rng.uniform_int(15));
    for (auto &s : ranked)
      for (std::size_t i = rng.uniform_int(4); i > 0; --i)
        s.insert(std::string(1, static_cast<char>('A' + rng.uniform_int(6))));
    const std::size_t k = 1 + rng.uniform_int(6);
    const auto kept = select_diverse_subset(ranked, k);
    REQUIRE(!kept.empty());
    CHECK(kept[0] == 0);
    CHECK(kept.size() <= k);
    CHECK(std::is_sorted(kept.begin(), kept.end()));
    for (std::size_t a = 0; a < kept.size(); ++a)
      for (std::size_t b = a + 1; b < kept.size(); ++b)
        CHECK(jaccard(ranked[kept[a]], ranked[kept[b]]) < kDiversityThreshold);
    // every skipped candidate before the last kept one conflicted with an
    // earlier kept one; if the subset is short, every candidate was examined
    const std::size_t limit = kept.size() < k ? ranked.size() : kept.back();
    for (std::size_t i = 0; i < limit; ++i) {
      if (std::find(kept.begin(), kept.end(), i) != kept.end()) continue;
      bool conflict = false;
      for (std::size_t s : kept)
        if (s < i && jaccard(ranked[i], ranked[s]) >= kDiversityThreshold) conflict = true;
      CHECK(conflict);
    }
  }
}

TEST_CASE("index frames are the extracted frames") {
  const auto lex = lexicon();
  const auto idx = build_index(pairs(), lex);
  for (const auto &e : idx.entries()) CHECK(e.frames.labels() == extract_frames(e.text, lex).labels());
  CHECK_THROWS_AS(build_index(std::vector<std::string>{}, lex), Error);
}

TEST_CASE("retrieve ranks by context similarity") {
  const auto idx = build_index(pairs(), lexicon());
  const auto top = retrieve(idx, {"where is the car"}, 2);
  REQUIRE(top.size() == 2);
  CHECK(top[0].entry == 1);
  CHECK(top[0].score == doctest::Approx(1.0));
  CHECK(retrieve(idx, {"where is the car"}, 100).size() == idx.size());
  CHECK_THROWS_AS(retrieve(idx, {"x"}, 0), Error);
  // ties keep index order
  const auto none = retrieve(idx, {"zzz"}, 4);
  for (std::size_t i = 0; i < none.size(); ++i) CHECK(none[i].entry == i);
  // every training context retrieves its own response first
  const auto ps = pairs();
  for (std::size_t i = 0; i < ps.size(); ++i) CHECK(retrieve(idx, {ps[i].context[0].text}, 1)[0].entry == i);
}

TEST_CASE("diverse subset over an index") {
  const auto idx = build_index(pairs(), lexicon());
  const auto ranked = retrieve(idx, {"do you want a car"}, 4);
  const auto sub = select_diverse_subset(ranked, idx, 4);
  REQUIRE(!sub.empty());
  CHECK(sub[0].entry == ranked[0].entry);
}

TEST_CASE("http reranker") {
  const auto lex = lexicon();
  SUBCASE("scores come from the service") {
    RerankServer server(200);
    auto idx = build_index(pairs(), lex, std::make_shared<HttpRerankerScorer>(server.url()));
    const auto top = retrieve(idx, {"where is the car"}, 4);
    CHECK(top[0].entry == 3);
    CHECK(top[3].entry == 0);
  }
  SUBCASE("non-200 is an error") {
    RerankServer server(500);
    auto idx = build_index(pairs(), lex, std::make_shared<HttpRerankerScorer>(server.url()));
    CHECK_THROWS_AS(retrieve(idx, {"x"}, 1), Error);
  }
  SUBCASE("fallback uses tf cosine") {
    RerankServer server(500);
    auto idx = build_index(pairs(), lex, std::make_shared<HttpRerankerScorer>(server.url(), true));
    CHECK(retrieve(idx, {"where is the car"}, 1)[0].entry == 1);
  }
  SUBCASE("unreachable service") {
    auto idx = build_index(pairs(), lex,
                           std::make_shared<HttpRerankerScorer>("http://127.0.0.1:1", false,
                                                                std::chrono::milliseconds(500)));
    CHECK_THROWS_AS(retrieve(idx, {"x"}, 1), Error);
  }
}

}
