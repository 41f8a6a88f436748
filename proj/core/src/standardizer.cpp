#include "rvcal/standardizer.hpp"

#include <cmath>
#include <string>

#include "rvcal/error.hpp"

namespace rvcal {

Standardizer Standardizer::fit(std::span<const LabeledSample> data) {
  if (data.empty()) throw Error(Errc::TooFewSamples, "cannot standardize an empty window");
  const std::size_t dim = data.front().features.size();
  Standardizer s;
  s.mean_.assign(dim, 0.0);
  s.scale_.assign(dim, 0.0);
  for (const auto& item : data) {
    if (item.features.size() != dim) {
      throw Error(Errc::DimensionMismatch, "inconsistent feature dimension in window");
    }
    for (std::size_t j = 0; j < dim; ++j) s.mean_[j] += item.features[j];
  }
  const auto n = static_cast<double>(data.size());
  for (auto& m : s.mean_) m /= n;
  for (const auto& item : data) {
    for (std::size_t j = 0; j < dim; ++j) {
      const double d = item.features[j] - s.mean_[j];
      s.scale_[j] += d * d;
    }
  }
  for (auto& v : s.scale_) {
    v = std::sqrt(v / n);
    if (!(v > 1e-12 * (1.0 + std::abs(v)))) v = 1.0;
  }
  return s;
}

Features Standardizer::transform(std::span<const double> x) const {
  Features out(x.size());
  transform_into(x, out);
  return out;
}

void Standardizer::transform_into(std::span<const double> x, std::span<double> out) const {
  if (x.size() != dim() || out.size() != dim()) {
    throw Error(Errc::DimensionMismatch, "expected " + std::to_string(dim()) + " features, got " +
                                             std::to_string(x.size()));
  }
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = (x[j] - mean_[j]) / scale_[j];
}

}  // namespace rvcal
