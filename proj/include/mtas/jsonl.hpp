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

#pragma once

// JSON helpers shared by the JSONL readers and writers.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "mtas/core.hpp"
#include "mtas/ingest.hpp"

namespace mtas::jsonl {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

/// Calls fn(object, line_number) for every non-blank line.
void for_each_object(std::istream& in, const std::function<void(const Json&, std::size_t)>& fn);

const Json& require(const Json& obj, const char* key, std::size_t line);
std::string require_string(const Json& obj, const char* key, std::size_t line);
double require_number(const Json& obj, const char* key, std::size_t line);
std::size_t require_count(const Json& obj, const char* key, std::size_t line);

Segment segment_from_json(const Json& obj, const NormalizationConfig& cfg, std::size_t line);
OrderedJson segment_to_json(const Segment& seg);

/// Compact single-line dump followed by a newline.
void write_line(std::ostream& out, const OrderedJson& obj);

}  // namespace mtas::jsonl
