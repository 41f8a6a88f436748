#include "rvcal/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rvcal/error.hpp"

namespace rvcal {

double rmse(std::span<const double> errors) {
  if (errors.empty()) throw Error(Errc::EmptyInput, "rmse of no errors");
  double ss = 0.0;
  for (double e : errors) ss += e * e;
  return std::sqrt(ss / static_cast<double>(errors.size()));
}

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = r;
    i = j + 1;
  }
  return ranks;
}

double spearman_rho(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error(Errc::EmptyInput, "spearman of empty input");
  if (a.size() != b.size()) throw Error(Errc::LengthMismatch, "spearman inputs differ in length");
  const auto ra = average_ranks(a);
  const auto rb = average_ranks(b);
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

std::vector<double> percentile_rank(std::span<const double> values) {
  if (values.empty()) throw Error(Errc::EmptyInput, "percentile rank of no values");
  auto ranks = average_ranks(values);
  if (ranks.size() == 1) return {50.0};
  const double denom = static_cast<double>(ranks.size() - 1);
  for (auto& r : ranks) r = 100.0 * (r - 1.0) / denom;
  return ranks;
}

std::vector<BinStats> binned_stats(std::span<const double> percentiles, std::span<const double> values,
                                   std::size_t bins) {
  if (percentiles.empty()) throw Error(Errc::EmptyInput, "binned stats of no values");
  if (percentiles.size() != values.size()) throw Error(Errc::LengthMismatch, "binned stats inputs differ in length");
  if (bins == 0) throw Error(Errc::InvalidArgument, "bin count must be positive");
  const double width = 100.0 / static_cast<double>(bins);
  std::vector<BinStats> out(bins);
  std::vector<double> sum(bins, 0.0), sq(bins, 0.0);
  for (std::size_t b = 0; b < bins; ++b) {
    out[b].lower = width * static_cast<double>(b);
    out[b].upper = b + 1 == bins ? 100.0 : width * static_cast<double>(b + 1);
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double p = std::clamp(percentiles[i], 0.0, 100.0);
    const auto b = std::min(bins - 1, static_cast<std::size_t>(p / width));
    ++out[b].count;
    sum[b] += values[i];
  }
  for (std::size_t b = 0; b < bins; ++b) {
    if (out[b].count > 0) out[b].mean = sum[b] / static_cast<double>(out[b].count);
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double p = std::clamp(percentiles[i], 0.0, 100.0);
    const auto b = std::min(bins - 1, static_cast<std::size_t>(p / width));
    sq[b] += (values[i] - out[b].mean) * (values[i] - out[b].mean);
  }
  for (std::size_t b = 0; b < bins; ++b) {
    if (out[b].count > 0) out[b].stddev = std::sqrt(sq[b] / static_cast<double>(out[b].count));
  }
  return out;
}

}  // namespace rvcal
