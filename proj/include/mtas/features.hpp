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

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "mtas/core.hpp"

namespace mtas {

/// Frame-major feature matrix: frame t occupies data[t*dim, (t+1)*dim).
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  /// Throws Error unless data.size() == dim * len and every value is finite.
  FeatureMatrix(std::size_t dim, std::size_t len, std::vector<double> data);
  static FeatureMatrix zeros(std::size_t dim, std::size_t len);

  std::size_t dim() const { return dim_; }
  std::size_t len() const { return len_; }
  const std::vector<double>& data() const { return data_; }
  std::span<const double> frame(std::size_t t) const;
  double at(std::size_t t, std::size_t d) const { return data_[t * dim_ + d]; }

  bool operator==(const FeatureMatrix&) const = default;

 private:
  std::size_t dim_ = 0;
  std::size_t len_ = 0;
  std::vector<double> data_;
};

struct StackConfig {
  std::size_t n = 10;
};

/// Concatenates every n consecutive frames along the feature axis:
/// dim -> dim*n, len -> ceil(len/n), the last frame zero-padded.
FeatureMatrix stack_frames(const FeatureMatrix& h, const StackConfig& cfg = {});

/// Text format: "dim len" then one line of dim decimals per frame.
FeatureMatrix read_features(std::istream& in);
void write_features(std::ostream& out, const FeatureMatrix& m);

}  // namespace mtas
