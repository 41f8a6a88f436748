#include "rvcal/neighbors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rvcal/error.hpp"

namespace rvcal {

std::size_t default_neighbor_count(std::size_t n) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n)))));
}

NeighborIndex::NeighborIndex(std::span<const LabeledSample> data, std::vector<double> labels)
    : standardizer_(Standardizer::fit(data)), labels_(std::move(labels)) {
  if (labels_.size() != data.size()) throw Error(Errc::LengthMismatch, "one label per training sample required");
  const std::size_t d = dim();
  points_.resize(data.size() * d);
  for (std::size_t i = 0; i < data.size(); ++i) {
    standardizer_.transform_into(data[i].features, std::span<double>(points_).subspan(i * d, d));
  }
}

bool NeighborIndex::value_less(std::size_t a, std::size_t b) const {
  if (labels_[a] != labels_[b]) return labels_[a] < labels_[b];
  const std::size_t d = dim();
  return std::lexicographical_compare(points_.begin() + static_cast<std::ptrdiff_t>(a * d),
                                      points_.begin() + static_cast<std::ptrdiff_t>((a + 1) * d),
                                      points_.begin() + static_cast<std::ptrdiff_t>(b * d),
                                      points_.begin() + static_cast<std::ptrdiff_t>((b + 1) * d));
}

std::vector<Neighbor> NeighborIndex::query(std::span<const double> x, std::size_t count) const {
  const std::size_t d = dim();
  if (x.size() != d) throw Error(Errc::DimensionMismatch, "query dimension does not match training data");
  const Features q = standardizer_.transform(x);
  std::vector<Neighbor> all(size());
  for (std::size_t i = 0; i < size(); ++i) {
    const double* p = points_.data() + i * d;
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      const double diff = p[j] - q[j];
      s += diff * diff;
    }
    all[i] = {i, std::sqrt(s)};
  }
  count = std::min(count, all.size());
  auto less = [this](const Neighbor& a, const Neighbor& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return value_less(a.index, b.index);
  };
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(count), all.end(), less);
  all.resize(count);
  return all;
}

std::vector<double> inverse_distance_weights(std::span<const Neighbor> neighbors) {
  constexpr double kGuard = 1e-12;
  std::vector<double> w(neighbors.size(), 0.0);
  const bool exact = std::any_of(neighbors.begin(), neighbors.end(), [](const Neighbor& n) { return n.distance == 0.0; });
  for (std::size_t i = 0; i < neighbors.size(); ++i) {
    if (exact) {
      w[i] = neighbors[i].distance == 0.0 ? 1.0 : 0.0;
    } else {
      w[i] = 1.0 / (neighbors[i].distance + kGuard);
    }
  }
  return w;
}

}  // namespace rvcal
