#include "rvcal/data.hpp"

#include <cmath>

#include "rvcal/error.hpp"
#include "rvcal/rng.hpp"

namespace rvcal {
namespace {

constexpr std::uint64_t kConceptStream = 0;
constexpr std::uint64_t kSampleStream = 1;

void check(const SyntheticSpec& spec) {
  if (spec.length == 0) throw Error(Errc::InvalidSpec, "length must be positive");
  if (spec.dim == 0) throw Error(Errc::InvalidSpec, "dimension must be positive");
  if (!(spec.noise >= 0.0) || !std::isfinite(spec.noise)) throw Error(Errc::InvalidSpec, "noise must be >= 0");
  if (spec.kind != DriftKind::Heteroscedastic) {
    const std::size_t pos = spec.drift_position.value_or(spec.length / 2);
    if (pos >= spec.length) throw Error(Errc::InvalidSpec, "drift position outside the stream");
    if (spec.kind == DriftKind::Gradual && spec.drift_width == 0) {
      throw Error(Errc::InvalidSpec, "gradual drift needs a positive width");
    }
  }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

std::optional<DriftKind> parse_drift_kind(std::string_view name) {
  if (name == "abrupt") return DriftKind::Abrupt;
  if (name == "gradual") return DriftKind::Gradual;
  if (name == "heteroscedastic") return DriftKind::Heteroscedastic;
  return std::nullopt;
}

std::string_view to_string(DriftKind kind) {
  switch (kind) {
    case DriftKind::Abrupt: return "abrupt";
    case DriftKind::Gradual: return "gradual";
    case DriftKind::Heteroscedastic: return "heteroscedastic";
  }
  return "unknown";
}

SyntheticConcept synthetic_concept(const SyntheticSpec& spec) {
  check(spec);
  Rng rng = Rng(spec.seed).split(kConceptStream);
  SyntheticConcept c{std::vector<double>(spec.dim), std::vector<double>(spec.dim)};
  for (auto& w : c.before) w = rng.normal();
  for (auto& w : c.after) w = rng.normal();
  return c;
}

Dataset generate_synthetic(const SyntheticSpec& spec) {
  const SyntheticConcept concept_ = synthetic_concept(spec);
  Rng rng = Rng(spec.seed).split(kSampleStream);
  const std::size_t pos = spec.drift_position.value_or(spec.length / 2);

  Dataset data;
  data.name = "synthetic-" + std::string(to_string(spec.kind));
  for (std::size_t j = 0; j < spec.dim; ++j) data.feature_names.push_back("x" + std::to_string(j + 1));
  data.target_name = "y";
  data.samples.reserve(spec.length);

  std::vector<double> w(spec.dim);
  for (std::size_t t = 0; t < spec.length; ++t) {
    LabeledSample s;
    s.features.resize(spec.dim);
    if (spec.kind == DriftKind::Heteroscedastic) {
      double norm = 0.0;
      for (auto& v : s.features) {
        v = rng.normal();
        norm += v * v;
      }
      norm = std::sqrt(norm);
      const double radius = rng.exponential();
      for (auto& v : s.features) v = norm > 0.0 ? v / norm * radius : 0.0;
      s.target = dot(concept_.before, s.features) + spec.noise * radius * rng.normal();
    } else {
      for (auto& v : s.features) v = rng.normal();
      double alpha = t < pos ? 0.0 : 1.0;
      if (spec.kind == DriftKind::Gradual && t >= pos) {
        alpha = std::min(1.0, static_cast<double>(t - pos) / static_cast<double>(spec.drift_width));
      }
      for (std::size_t j = 0; j < spec.dim; ++j) w[j] = (1.0 - alpha) * concept_.before[j] + alpha * concept_.after[j];
      s.target = dot(w, s.features) + spec.noise * rng.normal();
    }
    data.samples.push_back(std::move(s));
  }
  return data;
}

}  // namespace rvcal
