#include "rvcal/budget.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rvcal/error.hpp"

namespace rvcal {

double update_spending(double spent, bool acquired, std::size_t window) {
  const auto w = static_cast<double>(window);
  return ((w - 1.0) * spent + (acquired ? 1.0 : 0.0)) / w;
}

bool varun_decide(VarUnState& state, double u, double b) {
  bool acquire = false;
  if (state.spent < b) {
    if (1.0 - u < state.theta) {
      state.theta *= 1.0 - state.step;
      acquire = true;
    } else {
      state.theta *= 1.0 + state.step;
    }
  }
  state.spent = update_spending(state.spent, acquire, state.window);
  return acquire;
}

bool split_decide(VarUnState& state, double u, double b, double nu, double eta, double draw) {
  if (eta > nu) return varun_decide(state, u, b);
  const bool acquire = state.spent < b && draw < b;
  state.spent = update_spending(state.spent, acquire, state.window);
  return acquire;
}

bool random_decide(SpendingState& state, double u, double b) {
  const bool acquire = (!state.gate || state.spent < b) && 1.0 - u < b;
  state.spent = update_spending(state.spent, acquire, state.window);
  return acquire;
}

double inclusive_quantile(std::span<const double> values, double q) {
  if (values.empty()) throw Error(Errc::EmptyInput, "quantile of an empty buffer");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const double pos = std::clamp(q, 0.0, 1.0) * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return frac == 0.0 ? v[lo] : v[lo] + frac * (v[hi] - v[lo]);
}

bool quantile_decide(QuantileFilterState& state, double u, double b) {
  state.buffer.push_back(u);
  while (state.buffer.size() > state.capacity) state.buffer.pop_front();
  const std::vector<double> snapshot(state.buffer.begin(), state.buffer.end());
  state.threshold = inclusive_quantile(snapshot, 1.0 - b);
  const bool acquire = u >= state.threshold && state.spent < b;
  state.spent = update_spending(state.spent, acquire, state.window);
  return acquire;
}

BudgetManager::BudgetManager(const BudgetConfig& config, Rng rng)
    : config_(config), rng_(std::move(rng)), threshold_(config.initial_threshold) {
  if (config.window == 0) throw Error(Errc::InvalidArgument, "spending window must be positive");
  if (!(config.step > 0.0 && config.step <= 1.0)) throw Error(Errc::InvalidArgument, "VarUn step must lie in (0, 1]");
  switch (config.kind) {
    case BudgetKind::VarUn:
    case BudgetKind::Split:
      if (!(config.initial_threshold > 0.0)) throw Error(Errc::InvalidArgument, "initial threshold must be positive");
      if (!(config.split_ratio > 0.0 && config.split_ratio < 1.0)) {
        throw Error(Errc::InvalidArgument, "split ratio must lie in (0, 1)");
      }
      state_ = VarUnState{config.initial_threshold, 0.0, config.step, config.window};
      break;
    case BudgetKind::Random:
      state_ = SpendingState{0.0, config.window, config.spending_gate};
      break;
    case BudgetKind::QuantileFilter:
      if (config.quantile_window == 0) throw Error(Errc::InvalidArgument, "quantile window must be positive");
      state_ = QuantileFilterState{{}, config.quantile_window, 0.0, config.window, 0.0};
      break;
  }
}

bool BudgetManager::decide(double u, double b) {
  switch (config_.kind) {
    case BudgetKind::VarUn: {
      auto& s = std::get<VarUnState>(state_);
      const bool acquire = varun_decide(s, u, b);
      threshold_ = s.theta;
      return acquire;
    }
    case BudgetKind::Split: {
      auto& s = std::get<VarUnState>(state_);
      const double eta = rng_.uniform();
      const double draw = rng_.uniform();
      const bool acquire = split_decide(s, u, b, config_.split_ratio, eta, draw);
      threshold_ = s.theta;
      return acquire;
    }
    case BudgetKind::Random: {
      threshold_ = b;
      return random_decide(std::get<SpendingState>(state_), u, b);
    }
    case BudgetKind::QuantileFilter: {
      auto& s = std::get<QuantileFilterState>(state_);
      const bool acquire = quantile_decide(s, u, b);
      threshold_ = s.threshold;
      return acquire;
    }
  }
  return false;
}

double BudgetManager::spent() const noexcept {
  return std::visit([](const auto& s) { return s.spent; }, state_);
}

}  // namespace rvcal
