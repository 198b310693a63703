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
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mtas/core.hpp"
#include "mtas/ingest.hpp"
#include "mtas/sot.hpp"
#include "mtas/wav.hpp"

namespace mtas {

struct MixSource {
  std::string audio_path;
  std::string speaker_id;
  std::string transcript_text;
};

struct NoiseSpec {
  std::string audio_path;
  double snr_db = 0.0;
};

/// One fully resolved mixture: delays are source start times in seconds.
struct MixtureSpec {
  std::string mixture_id;
  std::vector<MixSource> sources;
  std::vector<double> delays;
  std::optional<NoiseSpec> noise;
  std::uint32_t sample_rate = 16000;
  std::uint64_t seed = 0;
};

struct DelayRange {
  double min = 1.0;
  double max = 1.5;
};

/// One manifest line before delays are drawn. Absent delays are sampled
/// from the per-mixture seed; absent seed derives from the global seed.
struct ManifestEntry {
  MixtureSpec spec;
  bool has_delays = false;
  bool has_seed = false;
};

/// Uniform draw in [min, max); exactly min when min == max. Uses the top 53
/// bits of one engine output so results do not depend on the standard
/// library's distribution implementation.
double sample_delay(std::mt19937_64& rng, double delay_min, double delay_max);

/// Seed for one mixture, independent of processing order.
std::uint64_t mixture_seed(std::uint64_t global_seed, std::string_view mixture_id);

/// Start times for num_sources sources: 0 for the first, then cumulative
/// sampled gaps truncated to whole samples.
std::vector<double> sample_start_times(std::size_t num_sources, std::uint64_t seed,
                                       const DelayRange& range, std::uint32_t sample_rate);

std::vector<ManifestEntry> parse_mixture_manifest(std::istream& in);

/// Fills in seed and delays where the manifest left them out, then validates.
MixtureSpec resolve_mixture(const ManifestEntry& entry, std::uint64_t global_seed,
                            const DelayRange& range);

/// Throws Error naming the mixture if a MixtureSpec invariant fails.
void validate_mixture(const MixtureSpec& spec);

double mean_power(std::span<const double> samples, std::size_t extent);

/// Shift-and-sum of the sources, optional noise scaled to spec.noise->snr_db
/// against the summed speech, and peak normalization to 0.9 only when some
/// sample exceeds 1 in magnitude.
AudioBuffer mix(const MixtureSpec& spec, std::span<const AudioBuffer> sources,
                const AudioBuffer* noise = nullptr);

struct SimulationManifest {
  std::vector<Session> sessions;
  std::vector<ReferenceRecord> references;
};

/// One session per mixture with a segment per source; the whole mixture is
/// one utterance group "g0". source_lengths holds sample counts per source.
SimulationManifest build_manifest(std::span<const MixtureSpec> specs,
                                  std::span<const std::vector<std::size_t>> source_lengths,
                                  const NormalizationConfig& cfg = {});

}  // namespace mtas
