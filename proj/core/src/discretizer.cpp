#include "rvcal/discretizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "rvcal/error.hpp"

namespace rvcal {
namespace {

constexpr int kMaxLloydIterations = 100;

// Within-segment SSE of sorted[i..j] (inclusive) from prefix sums of the
// shifted values.
class SegmentCost {
 public:
  explicit SegmentCost(std::span<const double> sorted) : sum_(sorted.size() + 1), sq_(sorted.size() + 1) {
    const double shift = sorted[sorted.size() / 2];
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      const double v = sorted[i] - shift;
      sum_[i + 1] = sum_[i] + v;
      sq_[i + 1] = sq_[i] + v * v;
    }
  }

  double operator()(std::size_t i, std::size_t j) const {
    const double n = static_cast<double>(j - i + 1);
    const double s = sum_[j + 1] - sum_[i];
    return std::max(0.0, (sq_[j + 1] - sq_[i]) - s * s / n);
  }

 private:
  std::vector<double> sum_;
  std::vector<double> sq_;
};

// Optimal contiguous partition of `sorted` into k segments. Returns the start
// index of each segment. The optimal split point is monotone in the prefix
// length, which allows divide-and-conquer over each DP layer.
std::vector<std::size_t> optimal_segment_starts(std::span<const double> sorted, int k) {
  const std::size_t n = sorted.size();
  const SegmentCost cost(sorted);
  constexpr double kInf = std::numeric_limits<double>::infinity();

  std::vector<double> prev(n), cur(n);
  // split[m][j]: start of the last segment when j+1 points form m+1 segments.
  std::vector<std::vector<std::size_t>> split(static_cast<std::size_t>(k), std::vector<std::size_t>(n, 0));
  for (std::size_t j = 0; j < n; ++j) prev[j] = cost(0, j);

  for (int m = 1; m < k; ++m) {
    auto& opt = split[static_cast<std::size_t>(m)];
    std::fill(cur.begin(), cur.end(), kInf);
    const auto lo_j = static_cast<std::size_t>(m);
    auto solve = [&](auto&& self, std::size_t jlo, std::size_t jhi, std::size_t olo, std::size_t ohi) -> void {
      if (jlo > jhi) return;
      const std::size_t j = jlo + (jhi - jlo) / 2;
      double best = kInf;
      std::size_t best_i = std::max<std::size_t>(olo, static_cast<std::size_t>(m));
      for (std::size_t i = std::max<std::size_t>(olo, static_cast<std::size_t>(m)); i <= std::min(j, ohi); ++i) {
        const double c = prev[i - 1] + cost(i, j);
        if (c < best) {
          best = c;
          best_i = i;
        }
      }
      cur[j] = best;
      opt[j] = best_i;
      if (j > jlo) self(self, jlo, j - 1, olo, best_i);
      self(self, j + 1, jhi, best_i, ohi);
    };
    solve(solve, lo_j, n - 1, lo_j, n - 1);
    std::swap(prev, cur);
  }

  std::vector<std::size_t> starts(static_cast<std::size_t>(k), 0);
  std::size_t end = n - 1;
  for (int m = k - 1; m >= 1; --m) {
    const std::size_t s = split[static_cast<std::size_t>(m)][end];
    starts[static_cast<std::size_t>(m)] = s;
    end = s - 1;
  }
  return starts;
}

std::vector<double> sorted_boundaries(const std::vector<double>& centers) {
  std::vector<double> b(centers.size() - 1);
  for (std::size_t i = 0; i + 1 < centers.size(); ++i) b[i] = 0.5 * (centers[i] + centers[i + 1]);
  return b;
}

int class_of(const std::vector<double>& boundaries, double y) {
  return static_cast<int>(std::lower_bound(boundaries.begin(), boundaries.end(), y) - boundaries.begin());
}

double median_of(std::vector<double>& values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

std::size_t count_distinct(std::span<const double> values) {
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
}

Discretizer Discretizer::fit(std::span<const double> targets, int k) {
  if (k < 1) throw Error(Errc::InvalidArgument, "class count must be positive");
  for (double y : targets) {
    if (!std::isfinite(y)) throw Error(Errc::NonFiniteTarget, "target is NaN or infinite");
  }
  const auto kk = static_cast<std::size_t>(k);
  if (targets.size() < kk || count_distinct(targets) < kk) {
    throw Error(Errc::TooFewDistinctValues,
                "need " + std::to_string(k) + " distinct targets, have " + std::to_string(count_distinct(targets)));
  }

  std::vector<double> sorted(targets.begin(), targets.end());
  std::sort(sorted.begin(), sorted.end());
  const double range = sorted.back() - sorted.front();

  std::vector<double> centers(kk);
  {
    const auto starts = optimal_segment_starts(sorted, k);
    for (std::size_t c = 0; c < kk; ++c) {
      const std::size_t lo = starts[c];
      const std::size_t hi = c + 1 < kk ? starts[c + 1] : sorted.size();
      centers[c] = std::accumulate(sorted.begin() + static_cast<std::ptrdiff_t>(lo),
                                   sorted.begin() + static_cast<std::ptrdiff_t>(hi), 0.0) /
                   static_cast<double>(hi - lo);
    }
  }

  std::vector<int> assign(sorted.size());
  std::vector<double> sums(kk);
  std::vector<std::size_t> counts(kk);
  auto assign_all = [&] {
    const auto b = sorted_boundaries(centers);
    std::fill(sums.begin(), sums.end(), 0.0);
    std::fill(counts.begin(), counts.end(), 0);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      assign[i] = class_of(b, sorted[i]);
      sums[static_cast<std::size_t>(assign[i])] += sorted[i];
      ++counts[static_cast<std::size_t>(assign[i])];
    }
  };

  // Lloyd refinement. Sorted data makes every cell a contiguous run.
  for (int iter = 0; iter < kMaxLloydIterations; ++iter) {
    std::sort(centers.begin(), centers.end());
    assign_all();
    const auto empty = std::find(counts.begin(), counts.end(), std::size_t{0});
    if (empty != counts.end()) {
      std::size_t far = 0;
      double far_dist = -1.0;
      for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double d = std::abs(sorted[i] - centers[static_cast<std::size_t>(assign[i])]);
        if (d > far_dist) {
          far_dist = d;
          far = i;
        }
      }
      centers[static_cast<std::size_t>(empty - counts.begin())] = sorted[far];
      continue;
    }
    double moved = 0.0;
    for (std::size_t c = 0; c < kk; ++c) {
      const double next = sums[c] / static_cast<double>(counts[c]);
      moved = std::max(moved, std::abs(next - centers[c]));
      centers[c] = next;
    }
    if (moved <= 1e-9 * range) break;
  }
  std::sort(centers.begin(), centers.end());
  assign_all();
  if (std::find(counts.begin(), counts.end(), std::size_t{0}) != counts.end()) {
    throw Error(Errc::TooFewDistinctValues, "k-means left an empty class");
  }

  Discretizer d;
  d.centers_ = centers;
  d.boundaries_ = sorted_boundaries(centers);
  d.counts_ = counts;
  d.means_.resize(kk);
  d.medians_.resize(kk);
  std::vector<std::vector<double>> members(kk);
  for (std::size_t i = 0; i < sorted.size(); ++i) members[static_cast<std::size_t>(assign[i])].push_back(sorted[i]);
  for (std::size_t c = 0; c < kk; ++c) {
    d.means_[c] = sums[c] / static_cast<double>(counts[c]);
    d.medians_[c] = median_of(members[c]);
  }
  return d;
}

int Discretizer::classify(double y) const {
  if (!std::isfinite(y)) throw Error(Errc::NonFiniteTarget, "cannot discretize a non-finite target");
  return class_of(boundaries_, y);
}

double Discretizer::inverse(std::span<const double> posterior, InverseMode mode) const {
  if (posterior.size() != centers_.size()) {
    throw Error(Errc::DimensionMismatch, "posterior has " + std::to_string(posterior.size()) + " entries, expected " +
                                             std::to_string(centers_.size()));
  }
  const auto best = static_cast<std::size_t>(std::max_element(posterior.begin(), posterior.end()) - posterior.begin());
  return mode == InverseMode::Mean ? means_[best] : medians_[best];
}

}  // namespace rvcal
