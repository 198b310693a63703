// Copyright 2026 The mtas Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <random>

#include "mtas/core.hpp"
#include "mtas/grouping.hpp"
#include "oracles.hpp"

using namespace mtas;

TEST_CASE("validate_session accepts a well-formed session") {
  Session s{"s1", {{"A", 0.0, 2.0, {"hi"}}}, std::nullopt};
  CHECK(validate_session(s).empty());
}

TEST_CASE("validate_session flags end == start") {
  Session s{"s1", {{"A", 1.0, 1.0, {"hi"}}}, std::nullopt};
  auto v = validate_session(s);
  REQUIRE(v.size() == 1);
  CHECK(v[0].rule == "end > start");
  CHECK(v[0].segment_index == 0u);
}

TEST_CASE("validate_session flags the reserved symbol") {
  Session s{"s1", {{"A", 0.0, 2.0, {"$"}}}, std::nullopt};
  auto v = validate_session(s);
  REQUIRE(v.size() == 1);
  CHECK(v[0].rule == "reserved symbol in token");
  // Another separator makes "$" an ordinary token.
  CHECK(validate_session(s, "<sc>").empty());
}

TEST_CASE("validate_session session-level and ordering rules") {
  Session s{"", {{"A", 2.0, 3.0, {}}, {"", 0.0, 1.0, {"a b"}}}, std::nullopt};
  auto v = validate_session(s);
  std::vector<std::string> rules;
  for (const auto& x : v) rules.push_back(x.describe());
  CHECK(rules == std::vector<std::string>{"session: session_id non-empty",
                                          "segment 1: speaker_id non-empty",
                                          "segment 1: whitespace in token",
                                          "segment 1: segments sorted by (start, end, speaker_id)"});
  CHECK(validate_session(Session{"x", {{"A", -0.5, 1.0, {}}}, {}})[0].rule ==
        "start non-negative");
}

TEST_CASE("empty-token segments are valid") {
  Session s{"s1", {{"A", 0.0, 2.0, {}}}, std::nullopt};
  CHECK(validate_session(s).empty());
}

TEST_CASE("SotTranscript render and tokens") {
  SotTranscript t{{Word{"a"}, SpeakerChange{}, Word{"b"}}, "$"};
  CHECK(t.render() == "a $ b");
  CHECK(t.tokens(true) == std::vector<std::string>{"a", "$", "b"});
  CHECK(t.tokens(false) == std::vector<std::string>{"a", "b"});
  CHECK(SotTranscript{}.render().empty());
}

TEST_CASE("AlignmentCounts additivity") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::size_t> d(0, 50);
  for (int i = 0; i < 100; ++i) {
    AlignmentCounts a{d(rng), d(rng), d(rng), d(rng)};
    AlignmentCounts b{d(rng), d(rng), d(rng), d(rng)};
    auto c = a + b;
    CHECK(c.errors() == a.errors() + b.errors());
    CHECK(c.ref_len == a.ref_len + b.ref_len);
    CHECK(c.substitutions == a.substitutions + b.substitutions);
  }
  CHECK_FALSE(AlignmentCounts{}.rate().has_value());
  CHECK(*AlignmentCounts{1, 1, 0, 4}.rate() == doctest::Approx(0.5));
}

TEST_CASE("group ids are deterministic across reruns") {
  std::mt19937 rng(5);
  for (int i = 0; i < 20; ++i) {
    auto s = oracle::random_session(rng, 30);
    CHECK(build_groups(s) == build_groups(s));
  }
}
