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

#include "mtas/mixsim.hpp"

#include <algorithm>
#include <cmath>
#include <istream>

#include "mtas/jsonl.hpp"

namespace mtas {

double sample_delay(std::mt19937_64& rng, double delay_min, double delay_max) {
  if (!(delay_min >= 0.0) || !std::isfinite(delay_max)) {
    throw Error("delay bounds must be finite and non-negative");
  }
  if (delay_min > delay_max) throw Error("delay_min must not exceed delay_max");
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  double d = delay_min + u * (delay_max - delay_min);
  if (d >= delay_max && delay_max > delay_min) d = std::nextafter(delay_max, delay_min);
  return d;
}

std::uint64_t mixture_seed(std::uint64_t global_seed, std::string_view mixture_id) {
  std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
  for (unsigned char c : mixture_id) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::uint64_t z = h ^ (global_seed + 0x9e3779b97f4a7c15ull);  // splitmix64 finalizer
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::vector<double> sample_start_times(std::size_t num_sources, std::uint64_t seed,
                                       const DelayRange& range, std::uint32_t sample_rate) {
  std::mt19937_64 rng(seed);
  std::vector<double> starts;
  std::uint64_t offset = 0;
  for (std::size_t k = 0; k < num_sources; ++k) {
    if (k > 0) {
      const double gap = sample_delay(rng, range.min, range.max);
      offset += static_cast<std::uint64_t>(std::floor(gap * sample_rate));
    }
    starts.push_back(static_cast<double>(offset) / sample_rate);
  }
  return starts;
}

std::vector<ManifestEntry> parse_mixture_manifest(std::istream& in) {
  std::vector<ManifestEntry> entries;
  jsonl::for_each_object(in, [&](const jsonl::Json& obj, std::size_t line) {
    ManifestEntry e;
    MixtureSpec& s = e.spec;
    s.mixture_id = jsonl::require_string(obj, "mixture_id", line);
    const auto& sources = jsonl::require(obj, "sources", line);
    if (!sources.is_array()) throw ParseError(line, "key \"sources\" must be an array");
    for (const auto& src : sources) {
      if (!src.is_object()) throw ParseError(line, "sources entries must be objects");
      s.sources.push_back({jsonl::require_string(src, "audio_path", line),
                           jsonl::require_string(src, "speaker_id", line),
                           jsonl::require_string(src, "transcript_text", line)});
    }
    const std::size_t rate = jsonl::require_count(obj, "sample_rate", line);
    if (rate == 0 || rate > 0xffffffffu) throw ParseError(line, "sample_rate out of range");
    s.sample_rate = static_cast<std::uint32_t>(rate);
    if (auto it = obj.find("delays"); it != obj.end()) {
      if (!it->is_array()) throw ParseError(line, "key \"delays\" must be an array");
      for (const auto& d : *it) {
        if (!d.is_number()) throw ParseError(line, "delays must be numbers");
        s.delays.push_back(d.get<double>());
      }
      e.has_delays = true;
    }
    if (auto it = obj.find("noise"); it != obj.end() && !it->is_null()) {
      if (!it->is_object()) throw ParseError(line, "key \"noise\" must be an object");
      s.noise = NoiseSpec{jsonl::require_string(*it, "audio_path", line),
                          jsonl::require_number(*it, "snr_db", line)};
    }
    if (obj.contains("seed")) {
      s.seed = jsonl::require_count(obj, "seed", line);
      e.has_seed = true;
    }
    if (obj.contains("tempo") && jsonl::require_number(obj, "tempo", line) != 1.0) {
      throw ParseError(line, "speed perturbation is not supported; tempo must be 1.0");
    }
    entries.push_back(std::move(e));
  });
  return entries;
}

void validate_mixture(const MixtureSpec& spec) {
  auto fail = [&](const std::string& what) {
    throw Error("mixture \"" + spec.mixture_id + "\": " + what);
  };
  if (spec.mixture_id.empty()) fail("mixture_id must be non-empty");
  if (spec.sources.empty()) fail("no sources");
  if (spec.sample_rate == 0) fail("sample_rate must be positive");
  if (spec.delays.size() != spec.sources.size()) fail("one delay per source required");
  if (spec.delays[0] != 0.0) fail("first delay must be 0");
  for (std::size_t k = 1; k < spec.delays.size(); ++k) {
    if (!std::isfinite(spec.delays[k]) || !(spec.delays[k] > spec.delays[k - 1])) {
      fail("delays must be strictly increasing");
    }
  }
  if (spec.noise && !std::isfinite(spec.noise->snr_db)) fail("snr_db must be finite");
}

MixtureSpec resolve_mixture(const ManifestEntry& entry, std::uint64_t global_seed,
                            const DelayRange& range) {
  MixtureSpec spec = entry.spec;
  if (!entry.has_seed) spec.seed = mixture_seed(global_seed, spec.mixture_id);
  if (!entry.has_delays) {
    spec.delays = sample_start_times(spec.sources.size(), spec.seed, range, spec.sample_rate);
  }
  validate_mixture(spec);
  return spec;
}

double mean_power(std::span<const double> samples, std::size_t extent) {
  if (extent == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < std::min(extent, samples.size()); ++i) sum += samples[i] * samples[i];
  return sum / static_cast<double>(extent);
}

AudioBuffer mix(const MixtureSpec& spec, std::span<const AudioBuffer> sources,
                const AudioBuffer* noise) {
  validate_mixture(spec);
  auto fail = [&](const std::string& what) {
    throw Error("mixture \"" + spec.mixture_id + "\": " + what);
  };
  if (sources.size() != spec.sources.size()) fail("source buffer count mismatch");
  if (spec.noise.has_value() != (noise != nullptr)) fail("noise buffer does not match spec");

  std::vector<std::size_t> offsets;
  std::size_t length = 0;
  for (std::size_t k = 0; k < sources.size(); ++k) {
    if (sources[k].sample_rate != spec.sample_rate) {
      fail("sample rate mismatch in source " + std::to_string(k) + " (" +
           std::to_string(sources[k].sample_rate) + " vs " + std::to_string(spec.sample_rate) +
           ")");
    }
    if (sources[k].samples.empty()) fail("source " + std::to_string(k) + " is empty");
    offsets.push_back(static_cast<std::size_t>(std::llround(spec.delays[k] * spec.sample_rate)));
    length = std::max(length, offsets.back() + sources[k].samples.size());
  }
  if (noise) {
    if (noise->sample_rate != spec.sample_rate) fail("sample rate mismatch in noise");
    length = std::max(length, noise->samples.size());
  }

  AudioBuffer out;
  out.sample_rate = spec.sample_rate;
  out.samples.assign(length, 0.0);
  for (std::size_t k = 0; k < sources.size(); ++k) {
    const auto& src = sources[k].samples;
    for (std::size_t i = 0; i < src.size(); ++i) out.samples[offsets[k] + i] += src[i];
  }

  if (noise) {
    const double speech_power = mean_power(out.samples, length);
    const double noise_power = mean_power(noise->samples, length);
    if (!(noise_power > 0.0)) fail("noise is silent");
    if (!(speech_power > 0.0)) fail("speech mixture is silent");
    const double gain =
        std::sqrt(speech_power / (noise_power * std::pow(10.0, spec.noise->snr_db / 10.0)));
    for (std::size_t i = 0; i < noise->samples.size(); ++i) {
      out.samples[i] += gain * noise->samples[i];
    }
  }

  double peak = 0.0;
  for (double x : out.samples) peak = std::max(peak, std::abs(x));
  if (peak > 1.0) {
    const double scale = 0.9 / peak;
    for (double& x : out.samples) x *= scale;
  }
  return out;
}

SimulationManifest build_manifest(std::span<const MixtureSpec> specs,
                                  std::span<const std::vector<std::size_t>> source_lengths,
                                  const NormalizationConfig& cfg) {
  if (source_lengths.size() != specs.size()) throw Error("one length list per mixture required");
  SimulationManifest m;
  for (std::size_t n = 0; n < specs.size(); ++n) {
    const MixtureSpec& spec = specs[n];
    validate_mixture(spec);
    if (source_lengths[n].size() != spec.sources.size()) {
      throw Error("mixture \"" + spec.mixture_id + "\": one length per source required");
    }
    Session session;
    session.session_id = spec.mixture_id;
    session.audio_path = spec.mixture_id + ".wav";
    for (std::size_t k = 0; k < spec.sources.size(); ++k) {
      const double start = spec.delays[k];
      const double duration = static_cast<double>(source_lengths[n][k]) / spec.sample_rate;
      session.segments.push_back({spec.sources[k].speaker_id, start, start + duration,
                                  normalize_text(spec.sources[k].transcript_text, cfg)});
    }
    sort_segments(session.segments);

    UtteranceGroup group;
    group.group_id = "g0";
    group.session_id = session.session_id;
    group.segments = session.segments;
    group.num_speakers = count_speakers(group.segments);
    m.references.push_back(make_reference(group, cfg.sc_symbol));
    m.sessions.push_back(std::move(session));
  }
  return m;
}

}  // namespace mtas
