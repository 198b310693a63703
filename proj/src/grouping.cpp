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

#include "mtas/grouping.hpp"

#include <algorithm>
#include <numeric>
#include <istream>
#include <ostream>
#include <set>
#include <utility>

#include "mtas/jsonl.hpp"

namespace mtas {

bool overlaps(const Segment& a, const Segment& b, const OverlapPolicy& policy) {
  if (a.speaker_id == b.speaker_id) return false;
  return std::min(a.end, b.end) - std::max(a.start, b.start) > policy.min_overlap;
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) x = std::exchange(parent_[x], root);
    return root;
  }

  // The smaller index becomes the root, so a root is its component's minimum.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::vector<UtteranceGroup> build_groups(const Session& session, const OverlapPolicy& policy) {
  if (!(policy.min_overlap >= 0.0)) throw Error("min_overlap must be >= 0");

  std::vector<Segment> segs = session.segments;
  sort_segments(segs);
  const std::size_t n = segs.size();
  DisjointSets sets(n);

  // Sweep in start order. A segment j that started earlier can still overlap
  // segment i or any later one only while end_j - start_i > min_overlap.
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < n; ++i) {
    std::erase_if(active, [&](std::size_t j) {
      return !(segs[j].end - segs[i].start > policy.min_overlap);
    });
    for (std::size_t j : active) {
      if (overlaps(segs[i], segs[j], policy)) sets.unite(i, j);
    }
    active.push_back(i);
  }

  // Roots are component minima in sorted order, which is also the order of
  // earliest start.
  std::vector<std::size_t> slot(n, n);
  std::vector<UtteranceGroup> groups;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t root = sets.find(i);
    if (slot[root] == n) {
      slot[root] = groups.size();
      UtteranceGroup g;
      g.group_id = "g" + std::to_string(groups.size());
      g.session_id = session.session_id;
      groups.push_back(std::move(g));
    }
    groups[slot[root]].segments.push_back(segs[i]);
  }
  for (auto& g : groups) g.num_speakers = count_speakers(g.segments);
  return groups;
}

void write_groups_jsonl(std::ostream& out, const std::vector<UtteranceGroup>& groups) {
  for (const auto& g : groups) {
    jsonl::OrderedJson j;
    j["session_id"] = g.session_id;
    j["group_id"] = g.group_id;
    j["num_speakers"] = g.num_speakers;
    j["segments"] = jsonl::OrderedJson::array();
    for (const auto& seg : g.segments) j["segments"].push_back(jsonl::segment_to_json(seg));
    jsonl::write_line(out, j);
  }
}

std::vector<UtteranceGroup> parse_groups_jsonl(std::istream& in, const NormalizationConfig& cfg) {
  std::vector<UtteranceGroup> groups;
  std::set<std::pair<std::string, std::string>> seen;
  jsonl::for_each_object(in, [&](const jsonl::Json& obj, std::size_t line) {
    UtteranceGroup g;
    g.session_id = jsonl::require_string(obj, "session_id", line);
    g.group_id = jsonl::require_string(obj, "group_id", line);
    if (!seen.emplace(g.session_id, g.group_id).second) {
      throw ParseError(line, "duplicate group " + g.session_id + "/" + g.group_id);
    }
    const auto& segs = jsonl::require(obj, "segments", line);
    if (!segs.is_array()) throw ParseError(line, "key \"segments\" must be an array");
    for (const auto& seg : segs) g.segments.push_back(jsonl::segment_from_json(seg, cfg, line));
    g.num_speakers = count_speakers(g.segments);
    if (jsonl::require_count(obj, "num_speakers", line) != g.num_speakers) {
      throw ParseError(line, "num_speakers disagrees with segments");
    }
    groups.push_back(std::move(g));
  });
  return groups;
}

}  // namespace mtas
