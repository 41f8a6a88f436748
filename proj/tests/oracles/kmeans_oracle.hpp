#pragma once

// Exact 1-D k-means references, independent of the library's implementation.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

namespace rvcal::oracle {

// SSE of v[lo, hi) around its own mean, two-pass.
inline double segment_sse(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  double mean = 0.0;
  for (std::size_t i = lo; i < hi; ++i) mean += v[i];
  mean /= static_cast<double>(hi - lo);
  double s = 0.0;
  for (std::size_t i = lo; i < hi; ++i) s += (v[i] - mean) * (v[i] - mean);
  return s;
}

// Textbook O(k n^2) dynamic program over contiguous partitions of the
// sorted values; returns the optimal within-class SSE.
inline double optimal_sse_dp(std::vector<double> v, int k) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  const auto kk = static_cast<std::size_t>(k);
  constexpr double inf = std::numeric_limits<double>::infinity();
  // best[m][j]: optimal SSE of the first j values in m clusters.
  std::vector<std::vector<double>> best(kk + 1, std::vector<double>(n + 1, inf));
  best[0][0] = 0.0;
  for (std::size_t m = 1; m <= kk; ++m) {
    for (std::size_t j = m; j <= n; ++j) {
      for (std::size_t i = m - 1; i < j; ++i) {
        if (best[m - 1][i] == inf) continue;
        best[m][j] = std::min(best[m][j], best[m - 1][i] + segment_sse(v, i, j));
      }
    }
  }
  return best[kk][n];
}

// Exhaustive enumeration of all cut placements; for cross-checking the DP on
// tiny inputs.
inline double optimal_sse_enumerate(std::vector<double> v, int k) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> cuts(static_cast<std::size_t>(k - 1));
  std::iota(cuts.begin(), cuts.end(), std::size_t{1});
  for (;;) {
    double s = 0.0;
    std::size_t lo = 0;
    for (std::size_t c : cuts) {
      s += segment_sse(v, lo, c);
      lo = c;
    }
    s += segment_sse(v, lo, n);
    best = std::min(best, s);
    // Next combination of k-1 cuts from {1, ..., n-1}.
    int i = k - 2;
    while (i >= 0 && cuts[static_cast<std::size_t>(i)] == n - 1 - static_cast<std::size_t>(k - 2 - i)) --i;
    if (i < 0) break;
    ++cuts[static_cast<std::size_t>(i)];
    for (auto j = static_cast<std::size_t>(i) + 1; j < cuts.size(); ++j) cuts[j] = cuts[j - 1] + 1;
  }
  return best;
}

}  // namespace rvcal::oracle
