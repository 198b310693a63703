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

#include "mtas/sot.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>

#include "mtas/jsonl.hpp"

namespace mtas {

std::vector<SpeakerStream> SotReference::streams() const {
  std::vector<SpeakerStream> out;
  for (std::size_t i = 0; i < speaker_order.size(); ++i) {
    out.push_back({i, per_speaker[i], speaker_order[i]});
  }
  return out;
}

SotReference serialize_group(const UtteranceGroup& group, std::string_view sc_symbol) {
  const auto& segs = group.segments;
  std::vector<std::size_t> order(segs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (segs[a].start != segs[b].start) return segs[a].start < segs[b].start;
    return segs[a].end < segs[b].end;
  });

  struct Speaker {
    std::string id;
    double first_start;
    std::vector<std::string> tokens;
  };
  std::vector<Speaker> speakers;
  for (std::size_t idx : order) {
    const Segment& s = segs[idx];
    auto it = std::find_if(speakers.begin(), speakers.end(),
                           [&](const Speaker& sp) { return sp.id == s.speaker_id; });
    if (it == speakers.end()) {
      speakers.push_back({s.speaker_id, s.start, {}});
      it = std::prev(speakers.end());
    }
    it->tokens.insert(it->tokens.end(), s.tokens.begin(), s.tokens.end());
  }
  std::stable_sort(speakers.begin(), speakers.end(), [](const Speaker& a, const Speaker& b) {
    if (a.first_start != b.first_start) return a.first_start < b.first_start;
    return a.id < b.id;
  });

  SotReference ref;
  ref.transcript.sc_symbol = std::string(sc_symbol);
  for (auto& sp : speakers) {
    if (sp.tokens.empty()) continue;
    if (!ref.speaker_order.empty()) ref.transcript.items.emplace_back(SpeakerChange{});
    for (const auto& t : sp.tokens) ref.transcript.items.emplace_back(Word{t});
    ref.speaker_order.push_back(sp.id);
    ref.per_speaker.push_back(std::move(sp.tokens));
  }
  return ref;
}

namespace {

std::vector<std::string_view> split_pieces(std::string_view flat, std::string_view sc_symbol) {
  std::vector<std::string_view> pieces;
  if (sc_symbol.empty()) {
    pieces.push_back(flat);
    return pieces;
  }
  std::size_t from = 0;
  for (;;) {
    std::size_t at = flat.find(sc_symbol, from);
    if (at == std::string_view::npos) {
      pieces.push_back(flat.substr(from));
      return pieces;
    }
    pieces.push_back(flat.substr(from, at - from));
    from = at + sc_symbol.size();
  }
}

}  // namespace

std::vector<SpeakerStream> split_sot(std::string_view flat, std::string_view sc_symbol,
                                     const NormalizationConfig& cfg) {
  std::vector<SpeakerStream> out;
  for (auto piece : split_pieces(flat, sc_symbol)) {
    auto tokens = normalize_text(piece, cfg);
    if (tokens.empty()) continue;
    out.push_back({out.size(), std::move(tokens), std::nullopt});
  }
  return out;
}

std::size_t estimate_speaker_count(std::string_view flat, std::string_view sc_symbol) {
  NormalizationConfig cfg;
  cfg.sc_symbol = std::string(sc_symbol);
  return split_sot(flat, sc_symbol, cfg).size();
}

SotTranscript parse_sot(std::string_view flat, std::string_view sc_symbol,
                        const NormalizationConfig& cfg) {
  SotTranscript t;
  t.sc_symbol = std::string(sc_symbol);
  bool first = true;
  for (auto piece : split_pieces(flat, sc_symbol)) {
    if (!first) t.items.emplace_back(SpeakerChange{});
    first = false;
    for (auto& tok : normalize_text(piece, cfg)) t.items.emplace_back(Word{std::move(tok)});
  }
  return t;
}

ReferenceRecord make_reference(const UtteranceGroup& group, std::string_view sc_symbol) {
  return {group.session_id, group.group_id, serialize_group(group, sc_symbol)};
}

void write_reference_jsonl(std::ostream& out, const std::vector<ReferenceRecord>& refs) {
  for (const auto& r : refs) {
    jsonl::OrderedJson j;
    j["session_id"] = r.session_id;
    j["group_id"] = r.group_id;
    j["num_speakers"] = r.num_speakers();
    j["sot"] = r.reference.transcript.render();
    j["speaker_order"] = r.reference.speaker_order;
    jsonl::OrderedJson per = jsonl::OrderedJson::object();
    for (std::size_t i = 0; i < r.reference.speaker_order.size(); ++i) {
      per[r.reference.speaker_order[i]] = join_tokens(r.reference.per_speaker[i]);
    }
    j["per_speaker"] = std::move(per);
    jsonl::write_line(out, j);
  }
}

std::vector<ReferenceRecord> parse_reference_jsonl(std::istream& in,
                                                   const NormalizationConfig& cfg) {
  std::vector<ReferenceRecord> refs;
  std::set<std::pair<std::string, std::string>> seen;
  jsonl::for_each_object(in, [&](const jsonl::Json& obj, std::size_t line) {
    ReferenceRecord r;
    r.session_id = jsonl::require_string(obj, "session_id", line);
    r.group_id = jsonl::require_string(obj, "group_id", line);
    if (!seen.emplace(r.session_id, r.group_id).second) {
      throw ParseError(line, "duplicate reference " + r.session_id + "/" + r.group_id);
    }
    const std::size_t num_speakers = jsonl::require_count(obj, "num_speakers", line);
    const auto& order = jsonl::require(obj, "speaker_order", line);
    const auto& per = jsonl::require(obj, "per_speaker", line);
    if (!order.is_array()) throw ParseError(line, "key \"speaker_order\" must be an array");
    if (!per.is_object()) throw ParseError(line, "key \"per_speaker\" must be an object");
    auto& ref = r.reference;
    ref.transcript.sc_symbol = cfg.sc_symbol;
    for (const auto& id : order) {
      if (!id.is_string()) throw ParseError(line, "speaker_order entries must be strings");
      const auto key = id.get<std::string>();
      if (std::find(ref.speaker_order.begin(), ref.speaker_order.end(), key) !=
          ref.speaker_order.end()) {
        throw ParseError(line, "speaker \"" + key + "\" repeated in speaker_order");
      }
      const std::string text = jsonl::require_string(per, key.c_str(), line);
      try {
        ref.per_speaker.push_back(normalize_text(text, cfg));
      } catch (const EncodingError& e) {
        throw ParseError(line, e.what());
      }
      ref.speaker_order.push_back(key);
    }
    if (num_speakers != ref.speaker_order.size() || per.size() != ref.speaker_order.size()) {
      throw ParseError(line, "num_speakers, speaker_order and per_speaker disagree");
    }
    const std::string flat = jsonl::require_string(obj, "sot", line);
    try {
      ref.transcript = parse_sot(flat, cfg.sc_symbol, cfg);
    } catch (const EncodingError& e) {
      throw ParseError(line, e.what());
    }
    refs.push_back(std::move(r));
  });
  return refs;
}

}  // namespace mtas
