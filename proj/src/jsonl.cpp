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

#include "mtas/jsonl.hpp"

#include <cmath>
#include <istream>
#include <ostream>

namespace mtas::jsonl {

namespace {

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

void for_each_object(std::istream& in, const std::function<void(const Json&, std::size_t)>& fn) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    Json obj;
    try {
      obj = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw ParseError(lineno, std::string("malformed JSON: ") + e.what());
    }
    if (!obj.is_object()) throw ParseError(lineno, "expected a JSON object");
    fn(obj, lineno);
  }
}

const Json& require(const Json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(line, std::string("missing required key \"") + key + "\"");
  return *it;
}

std::string require_string(const Json& obj, const char* key, std::size_t line) {
  const Json& v = require(obj, key, line);
  if (!v.is_string()) throw ParseError(line, std::string("key \"") + key + "\" must be a string");
  return v.get<std::string>();
}

double require_number(const Json& obj, const char* key, std::size_t line) {
  const Json& v = require(obj, key, line);
  if (!v.is_number()) throw ParseError(line, std::string("key \"") + key + "\" must be a number");
  double d = v.get<double>();
  if (!std::isfinite(d)) throw ParseError(line, std::string("key \"") + key + "\" must be finite");
  return d;
}

std::size_t require_count(const Json& obj, const char* key, std::size_t line) {
  const Json& v = require(obj, key, line);
  if (!v.is_number_unsigned()) {
    throw ParseError(line, std::string("key \"") + key + "\" must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

Segment segment_from_json(const Json& obj, const NormalizationConfig& cfg, std::size_t line) {
  if (!obj.is_object()) throw ParseError(line, "segment must be a JSON object");
  Segment seg;
  seg.speaker_id = require_string(obj, "speaker", line);
  seg.start = require_number(obj, "start", line);
  seg.end = require_number(obj, "end", line);
  try {
    seg.tokens = normalize_text(require_string(obj, "text", line), cfg);
  } catch (const EncodingError& e) {
    throw ParseError(line, e.what());
  }
  return seg;
}

OrderedJson segment_to_json(const Segment& seg) {
  OrderedJson j;
  j["speaker"] = seg.speaker_id;
  j["start"] = seg.start;
  j["end"] = seg.end;
  j["text"] = join_tokens(seg.tokens);
  return j;
}

void write_line(std::ostream& out, const OrderedJson& obj) {
  out << obj.dump() << '\n';
}

}  // namespace mtas::jsonl
