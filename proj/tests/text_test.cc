// tests/text_test.cc

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

#include "edge/text.h"

using namespace edge;

TEST_SUITE("text") {

TEST_CASE("tokenize separates punctuation and lowercases") {
  CHECK(tokenize("Hello, World!") == std::vector<std::string>{"hello", ",", "world", "!"});
  CHECK(tokenize("  spaced   out ") == std::vector<std::string>{"spaced", "out"});
  CHECK(tokenize("").empty());
}

TEST_CASE("clitics") {
  CHECK(tokenize("don't") == std::vector<std::string>{"do", "n't"});
  CHECK(tokenize("do n't") == std::vector<std::string>{"do", "n't"});
  CHECK(tokenize("it's") == std::vector<std::string>{"it", "'s"});
}

TEST_CASE("offsets point into the source") {
  const std::string s = "Why do you?";
  for (const auto &t : tokenize_with_offsets(s))
    CHECK(to_lower(s.substr(t.offset, t.text.size())) == t.text);
}

TEST_CASE("tokenize is idempotent over detokenize") {
  for (const char *s : {"Hello, world!", "i don't know. really?", "a-b c"}) {
    const auto once = tokenize(s);
    CHECK(tokenize(detokenize(once)) == once);
  }
}

TEST_CASE("lemmatize suffix rules") {
  CHECK(lemmatize("eating") == "eat");
  CHECK(lemmatize("sing") == "sing");
  CHECK(lemmatize("requested") == "request");
  CHECK(lemmatize("red") == "red");
  CHECK(lemmatize("eggs") == "egg");
  CHECK(lemmatize("class") == "class");
  CHECK(lemmatize("is") == "is");
}

TEST_CASE("punctuation predicate") {
  CHECK(is_punctuation("?"));
  CHECK(is_punctuation("..."));
  CHECK_FALSE(is_punctuation("n't"));
  CHECK_FALSE(is_punctuation(""));
}

}
