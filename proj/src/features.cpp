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

#include "mtas/features.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace mtas {

FeatureMatrix::FeatureMatrix(std::size_t dim, std::size_t len, std::vector<double> data)
    : dim_(dim), len_(len), data_(std::move(data)) {
  if (dim != 0 && len > data_.max_size() / dim) throw Error("feature matrix too large");
  if (data_.size() != dim * len) {
    throw Error("feature data has " + std::to_string(data_.size()) + " values, expected " +
                std::to_string(dim * len));
  }
  for (double v : data_) {
    if (!std::isfinite(v)) throw Error("feature values must be finite");
  }
}

FeatureMatrix FeatureMatrix::zeros(std::size_t dim, std::size_t len) {
  return FeatureMatrix(dim, len, std::vector<double>(dim * len, 0.0));
}

std::span<const double> FeatureMatrix::frame(std::size_t t) const {
  return std::span<const double>(data_).subspan(t * dim_, dim_);
}

FeatureMatrix stack_frames(const FeatureMatrix& h, const StackConfig& cfg) {
  if (cfg.n < 1) throw Error("stacking factor n must be >= 1");
  if (h.len() < 1) throw Error("stack_frames needs at least one frame");
  const std::size_t n = cfg.n;
  const std::size_t out_len = (h.len() + n - 1) / n;
  const std::size_t out_dim = h.dim() * n;
  std::vector<double> out(out_dim * out_len, 0.0);
  for (std::size_t t = 0; t < out_len; ++t) {
    for (std::size_t k = 0; k < n && t * n + k < h.len(); ++k) {
      auto src = h.frame(t * n + k);
      std::copy(src.begin(), src.end(), out.begin() + static_cast<std::ptrdiff_t>(t * out_dim + k * h.dim()));
    }
  }
  return FeatureMatrix(out_dim, out_len, std::move(out));
}

FeatureMatrix read_features(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError(0, "empty feature file");
  std::istringstream header(line);
  std::size_t dim = 0, len = 0;
  std::string extra;
  if (!(header >> dim >> len) || (header >> extra)) {
    throw ParseError(lineno, "expected header \"dim len\"");
  }
  std::vector<double> data;
  for (std::size_t t = 0; t < len; ++t) {
    if (!next_line()) throw ParseError(lineno, "expected " + std::to_string(len) + " frames");
    std::istringstream fields(line);
    std::size_t count = 0;
    for (std::string tok; fields >> tok; ++count) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw ParseError(lineno, "bad number \"" + tok + "\"");
      data.push_back(v);
    }
    if (count != dim) {
      throw ParseError(lineno, "frame has " + std::to_string(count) + " values, expected " +
                                   std::to_string(dim));
    }
  }
  if (next_line()) throw ParseError(lineno, "trailing data after last frame");
  return FeatureMatrix(dim, len, std::move(data));
}

void write_features(std::ostream& out, const FeatureMatrix& m) {
  out << m.dim() << ' ' << m.len() << '\n';
  std::ostringstream buf;
  buf << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t t = 0; t < m.len(); ++t) {
    auto f = m.frame(t);
    for (std::size_t d = 0; d < f.size(); ++d) {
      if (d) buf << ' ';
      buf << f[d];
    }
    buf << '\n';
  }
  out << buf.str();
}

}  // namespace mtas
