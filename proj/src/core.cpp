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

#include "mtas/core.hpp"

#include <algorithm>
#include <set>

namespace mtas {

std::string SotTranscript::render() const {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ' ';
    if (const auto* w = std::get_if<Word>(&item)) {
      out += w->token;
    } else {
      out += sc_symbol;
    }
  }
  return out;
}

std::vector<std::string> SotTranscript::tokens(bool include_sc) const {
  std::vector<std::string> out;
  out.reserve(items.size());
  for (const auto& item : items) {
    if (const auto* w = std::get_if<Word>(&item)) {
      out.push_back(w->token);
    } else if (include_sc) {
      out.push_back(sc_symbol);
    }
  }
  return out;
}

std::optional<double> AlignmentCounts::rate() const {
  if (ref_len == 0) return std::nullopt;
  return static_cast<double>(errors()) / static_cast<double>(ref_len);
}

std::string Violation::describe() const {
  if (segment_index) return "segment " + std::to_string(*segment_index) + ": " + rule;
  return "session: " + rule;
}

namespace {

bool has_space(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
  });
}

bool segment_less(const Segment& a, const Segment& b) {
  if (a.start != b.start) return a.start < b.start;
  if (a.end != b.end) return a.end < b.end;
  return a.speaker_id < b.speaker_id;
}

}  // namespace

std::vector<Violation> validate_session(const Session& session, std::string_view sc_symbol) {
  std::vector<Violation> out;
  if (session.session_id.empty()) out.push_back({std::nullopt, "session_id non-empty"});
  for (std::size_t i = 0; i < session.segments.size(); ++i) {
    const Segment& s = session.segments[i];
    if (s.speaker_id.empty()) out.push_back({i, "speaker_id non-empty"});
    if (!(s.start >= 0.0)) out.push_back({i, "start non-negative"});
    if (!(s.end > s.start)) out.push_back({i, "end > start"});
    for (const auto& tok : s.tokens) {
      if (tok.empty()) {
        out.push_back({i, "empty token"});
      } else if (has_space(tok)) {
        out.push_back({i, "whitespace in token"});
      } else if (!sc_symbol.empty() && tok.find(sc_symbol) != std::string::npos) {
        out.push_back({i, "reserved symbol in token"});
      }
    }
    if (i > 0 && segment_less(s, session.segments[i - 1])) {
      out.push_back({i, "segments sorted by (start, end, speaker_id)"});
    }
  }
  return out;
}

void sort_segments(std::vector<Segment>& segments) {
  std::stable_sort(segments.begin(), segments.end(), segment_less);
}

std::size_t count_speakers(const std::vector<Segment>& segments) {
  std::set<std::string_view> ids;
  for (const auto& s : segments) ids.insert(s.speaker_id);
  return ids.size();
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

}  // namespace mtas
