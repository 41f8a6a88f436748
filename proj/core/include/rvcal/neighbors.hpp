#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rvcal/standardizer.hpp"
#include "rvcal/types.hpp"

namespace rvcal {

/// k-NN default: max(1, round(sqrt(n))).
std::size_t default_neighbor_count(std::size_t n);

struct Neighbor {
  std::size_t index;
  double distance;
};

/// Brute-force Euclidean neighbor search in window-standardized space.
///
/// Candidates at equal distance are ordered by their (label, features)
/// values, never by storage position, so permuting the training set does
/// not change which neighbors are returned.
class NeighborIndex {
 public:
  NeighborIndex() = default;
  NeighborIndex(std::span<const LabeledSample> data, std::vector<double> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  std::size_t dim() const noexcept { return standardizer_.dim(); }
  double label(std::size_t i) const { return labels_[i]; }

  std::vector<Neighbor> query(std::span<const double> x, std::size_t count) const;

 private:
  bool value_less(std::size_t a, std::size_t b) const;

  Standardizer standardizer_;
  std::vector<double> points_;  // row-major, size() x dim()
  std::vector<double> labels_;
};

/// Inverse-distance weights 1 / (d + 1e-12). When some neighbors coincide
/// with the query, they share all the weight equally.
std::vector<double> inverse_distance_weights(std::span<const Neighbor> neighbors);

}  // namespace rvcal
