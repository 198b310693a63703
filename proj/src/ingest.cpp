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

#include "mtas/ingest.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include <unicode/locid.h>
#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "mtas/jsonl.hpp"

namespace mtas {

namespace {

void check_utf8(std::string_view raw) {
  const auto* bytes = reinterpret_cast<const uint8_t*>(raw.data());
  const auto len = static_cast<int32_t>(raw.size());
  int32_t i = 0;
  while (i < len) {
    int32_t at = i;
    UChar32 c;
    U8_NEXT(bytes, i, len, c);
    if (c < 0) throw EncodingError("invalid UTF-8 at byte " + std::to_string(at));
  }
}

bool is_word_char(UChar32 c) {
  return c == U'\'' || u_hasBinaryProperty(c, UCHAR_ALPHABETIC) || u_isdigit(c);
}

}  // namespace

std::vector<std::string> normalize_text(std::string_view raw, const NormalizationConfig& cfg) {
  check_utf8(raw);
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error("ICU NFC normalizer unavailable");
  icu::UnicodeString text = nfc->normalize(
      icu::UnicodeString::fromUTF8(icu::StringPiece(raw.data(), static_cast<int32_t>(raw.size()))),
      status);
  if (U_FAILURE(status)) throw Error("NFC normalization failed");
  if (cfg.lowercase) text.toLower(icu::Locale::getRoot());

  std::vector<std::string> tokens;
  icu::UnicodeString current;
  auto flush = [&] {
    if (current.isEmpty()) return;
    std::string utf8;
    current.toUTF8String(utf8);
    tokens.push_back(std::move(utf8));
    current.remove();
  };
  for (int32_t i = 0; i < text.length(); i = text.moveIndex32(i, 1)) {
    UChar32 c = text.char32At(i);
    bool separator = u_isUWhiteSpace(c) || (cfg.strip_nonword && !is_word_char(c));
    if (separator) {
      flush();
    } else {
      current.append(c);
    }
  }
  flush();
  return tokens;
}

std::vector<Session> parse_session_jsonl(std::istream& in, const NormalizationConfig& cfg) {
  std::vector<Session> sessions;
  std::set<std::string> seen;
  jsonl::for_each_object(in, [&](const jsonl::Json& obj, std::size_t line) {
    Session s;
    s.session_id = jsonl::require_string(obj, "session_id", line);
    if (!seen.insert(s.session_id).second) {
      throw ParseError(line, "duplicate session_id \"" + s.session_id + "\"");
    }
    const auto& segs = jsonl::require(obj, "segments", line);
    if (!segs.is_array()) throw ParseError(line, "key \"segments\" must be an array");
    for (const auto& seg : segs) s.segments.push_back(jsonl::segment_from_json(seg, cfg, line));
    if (auto it = obj.find("audio"); it != obj.end()) {
      if (!it->is_string()) throw ParseError(line, "key \"audio\" must be a string");
      s.audio_path = it->get<std::string>();
    }
    sort_segments(s.segments);
    sessions.push_back(std::move(s));
  });
  return sessions;
}

void write_session_jsonl(std::ostream& out, const std::vector<Session>& sessions) {
  for (const auto& s : sessions) {
    jsonl::OrderedJson j;
    j["session_id"] = s.session_id;
    j["segments"] = jsonl::OrderedJson::array();
    for (const auto& seg : s.segments) j["segments"].push_back(jsonl::segment_to_json(seg));
    if (s.audio_path) j["audio"] = *s.audio_path;
    jsonl::write_line(out, j);
  }
}

namespace {

double parse_seconds(const std::string& field, const char* name, std::size_t line) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    throw ParseError(line, std::string("non-numeric ") + name + " time \"" + field + "\"");
  }
  return v;
}

}  // namespace

std::vector<Session> parse_stm(std::istream& in, const NormalizationConfig& cfg) {
  std::vector<Session> sessions;
  std::map<std::string, std::size_t> index;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream fields(line);
    std::vector<std::string> f;
    for (std::string w; fields >> w;) f.push_back(std::move(w));
    if (f.empty() || f[0].rfind(";;", 0) == 0) continue;
    if (f.size() < 5) {
      throw ParseError(lineno, "STM line needs at least 5 fields, got " + std::to_string(f.size()));
    }
    Segment seg;
    seg.speaker_id = f[2];
    seg.start = parse_seconds(f[3], "begin", lineno);
    seg.end = parse_seconds(f[4], "end", lineno);
    std::size_t text_from = 5;
    if (f.size() > 5 && f[5].size() >= 2 && f[5].front() == '<' && f[5].back() == '>') {
      text_from = 6;
    }
    std::string text;
    for (std::size_t i = text_from; i < f.size(); ++i) {
      if (!text.empty()) text += ' ';
      text += f[i];
    }
    try {
      seg.tokens = normalize_text(text, cfg);
    } catch (const EncodingError& e) {
      throw ParseError(lineno, e.what());
    }
    auto [it, inserted] = index.try_emplace(f[0], sessions.size());
    if (inserted) sessions.push_back(Session{f[0], {}, std::nullopt});
    sessions[it->second].segments.push_back(std::move(seg));
  }
  for (auto& s : sessions) sort_segments(s.segments);
  return sessions;
}

std::vector<HypothesisRecord> parse_hypothesis_jsonl(std::istream& in) {
  std::vector<HypothesisRecord> out;
  jsonl::for_each_object(in, [&](const jsonl::Json& obj, std::size_t line) {
    out.push_back({jsonl::require_string(obj, "session_id", line),
                   jsonl::require_string(obj, "group_id", line),
                   jsonl::require_string(obj, "sot", line)});
  });
  return out;
}

void write_hypothesis_jsonl(std::ostream& out, const std::vector<HypothesisRecord>& hyps) {
  for (const auto& h : hyps) {
    jsonl::OrderedJson j;
    j["session_id"] = h.session_id;
    j["group_id"] = h.group_id;
    j["sot"] = h.sot;
    jsonl::write_line(out, j);
  }
}

}  // namespace mtas
