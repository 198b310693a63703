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

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "mtas/grouping.hpp"
#include "oracles.hpp"

using namespace mtas;

namespace {

Segment seg(const char* spk, double a, double b) { return {spk, a, b, {"w"}}; }

// Partition as sets of sorted-session indices.
std::vector<std::vector<std::size_t>> partition_of(const Session& s,
                                                   const std::vector<UtteranceGroup>& groups) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> used(s.segments.size(), false);
  for (const auto& g : groups) {
    std::vector<std::size_t> idx;
    for (const auto& x : g.segments) {
      for (std::size_t i = 0; i < s.segments.size(); ++i) {
        if (!used[i] && s.segments[i] == x) {
          used[i] = true;
          idx.push_back(i);
          break;
        }
      }
    }
    std::sort(idx.begin(), idx.end());
    out.push_back(idx);
  }
  return out;
}

}  // namespace

TEST_CASE("overlaps examples") {
  CHECK(overlaps(seg("A", 0, 2), seg("B", 1, 3)));
  CHECK_FALSE(overlaps(seg("A", 0, 2), seg("B", 2, 3)));
  CHECK_FALSE(overlaps(seg("A", 0, 2), seg("A", 1, 3)));
  CHECK_FALSE(overlaps(seg("A", 0, 2), seg("B", 1, 3), OverlapPolicy{1.0}));
  CHECK(overlaps(seg("A", 0, 2), seg("B", 1, 3), OverlapPolicy{0.5}));
}

TEST_CASE("build_groups transitive chain") {
  Session s{"s", {seg("A", 0, 2), seg("B", 1, 3), seg("C", 2.5, 4)}, {}};
  auto g = build_groups(s);
  REQUIRE(g.size() == 1);
  CHECK(g[0].group_id == "g0");
  CHECK(g[0].session_id == "s");
  CHECK(g[0].num_speakers == 3);
  CHECK(g[0].segments.size() == 3);
}

TEST_CASE("build_groups disjoint and empty") {
  Session s{"s", {seg("A", 0, 2), seg("B", 3, 4)}, {}};
  auto g = build_groups(s);
  REQUIRE(g.size() == 2);
  CHECK(g[0].group_id == "g0");
  CHECK(g[1].group_id == "g1");
  CHECK(g[0].segments[0].speaker_id == "A");
  CHECK(g[0].num_speakers == 1);
  CHECK(build_groups(Session{"e", {}, {}}).empty());
  CHECK_THROWS_AS(build_groups(s, OverlapPolicy{-1.0}), Error);
}

TEST_CASE("same-speaker segments do not link, but a bridge does") {
  // A[0,5] and A[1,2] are not linked by themselves; B[4,6] links to A[0,5] only.
  Session s{"s", {seg("A", 0, 5), seg("A", 1, 2), seg("B", 4, 6)}, {}};
  auto g = build_groups(s);
  REQUIRE(g.size() == 2);
  CHECK(g[0].segments.size() == 2);
  CHECK(g[0].segments[0] == seg("A", 0, 5));
  CHECK(g[0].segments[1] == seg("B", 4, 6));
  CHECK(g[1].segments[0] == seg("A", 1, 2));
}

TEST_CASE("build_groups matches brute-force components") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    auto s = oracle::random_session(rng, 50);
    const double min_overlap = (trial % 3) * 0.5;
    auto groups = build_groups(s, OverlapPolicy{min_overlap});
    auto mine = partition_of(s, groups);
    auto expected = oracle::components(s.segments, min_overlap);
    CHECK(mine == expected);
  }
}

TEST_CASE("raising min_overlap never merges groups") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    auto s = oracle::random_session(rng, 40);
    auto loose = partition_of(s, build_groups(s, OverlapPolicy{0.0}));
    auto strict = partition_of(s, build_groups(s, OverlapPolicy{1.0}));
    std::map<std::size_t, std::size_t> loose_of;
    for (std::size_t g = 0; g < loose.size(); ++g) {
      for (auto i : loose[g]) loose_of[i] = g;
    }
    // Every strict group sits inside one loose group.
    for (const auto& g : strict) {
      for (auto i : g) CHECK(loose_of[i] == loose_of[g.front()]);
    }
    CHECK(strict.size() >= loose.size());
  }
}

TEST_CASE("groups JSONL round-trip") {
  std::mt19937 rng(8);
  auto s = oracle::random_session(rng, 30);
  s.session_id = "sess";
  auto groups = build_groups(s);
  std::stringstream buf;
  write_groups_jsonl(buf, groups);
  CHECK(parse_groups_jsonl(buf) == groups);

  std::istringstream wrong(
      R"({"session_id":"s","group_id":"g0","num_speakers":2,"segments":[{"speaker":"A","start":0,"end":1,"text":"x"}]})");
  CHECK_THROWS_AS(parse_groups_jsonl(wrong), ParseError);
}
