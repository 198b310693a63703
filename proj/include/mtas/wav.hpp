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

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "mtas/core.hpp"

namespace mtas {

class WavError : public Error {
 public:
  using Error::Error;
};

/// Mono audio, samples nominally in [-1, 1].
struct AudioBuffer {
  std::vector<double> samples;
  std::uint32_t sample_rate = 16000;

  double duration() const { return static_cast<double>(samples.size()) / sample_rate; }
};

enum class WavEncoding { kPcm16, kFloat32 };

/// Accepts mono RIFF/WAVE in 16-bit PCM or 32-bit IEEE float; anything else
/// is rejected with WavError.
AudioBuffer decode_wav(std::span<const std::uint8_t> bytes);
AudioBuffer read_wav(const std::filesystem::path& path);

/// PCM16 clamps to [-1, 1) and rounds to the nearest step of 1/32768.
std::vector<std::uint8_t> encode_wav(const AudioBuffer& audio,
                                     WavEncoding encoding = WavEncoding::kPcm16);
void write_wav(const std::filesystem::path& path, const AudioBuffer& audio,
               WavEncoding encoding = WavEncoding::kPcm16);

}  // namespace mtas
