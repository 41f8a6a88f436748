#pragma once

#include <cstddef>
#include <deque>
#include <span>
#include <variant>

#include "rvcal/rng.hpp"

namespace rvcal {

/// Approximate spending estimate: spent <- ((w - 1) * spent + acquired) / w.
double update_spending(double spent, bool acquired, std::size_t window);

/// Variable Uncertainty state. theta stays positive (multiplicative updates
/// by 1 +/- step) and spent stays in [0, 1] (convex update).
struct VarUnState {
  double theta = 1.0;
  double spent = 0.0;
  double step = 0.01;
  std::size_t window = 256;
};

/// Variable Uncertainty for a utility in [0, 1]:
///   if spent < b:  acquire iff 1 - u < theta; theta *= (1 - step) on acquire,
///                  theta *= (1 + step) otherwise
///   else:          skip, theta unchanged
/// followed by the spending update.
bool varun_decide(VarUnState& state, double u, double b);

/// Split: when eta > nu, identical to varun_decide. Otherwise the random
/// branch acquires iff spent < b and draw < b, leaving theta untouched. The
/// spending estimate is updated in both branches.
bool split_decide(VarUnState& state, double u, double b, double nu, double eta, double draw);

struct SpendingState {
  double spent = 0.0;
  std::size_t window = 256;
  /// When false the random manager ignores the spending estimate.
  bool gate = true;
};

/// Random baseline: acquire iff 1 - u < b (and spent < b when gated).
bool random_decide(SpendingState& state, double u, double b);

/// Quantile filter for unbounded utilities: a ring buffer of recent
/// utilities and the (1 - b) empirical quantile as threshold.
struct QuantileFilterState {
  std::deque<double> buffer;
  std::size_t capacity = 256;
  double spent = 0.0;
  std::size_t window = 256;
  double threshold = 0.0;  // last computed quantile
};

/// Linear interpolation between order statistics at position (n - 1) * q.
double inclusive_quantile(std::span<const double> values, double q);

/// Pushes u, recomputes the (1 - b) quantile of the buffer, acquires iff
/// u >= quantile and spent < b, then updates spending.
bool quantile_decide(QuantileFilterState& state, double u, double b);

enum class BudgetKind { VarUn, Split, Random, QuantileFilter };

struct BudgetConfig {
  BudgetKind kind = BudgetKind::VarUn;
  double step = 0.01;
  double initial_threshold = 1.0;
  std::size_t window = 256;
  double split_ratio = 0.5;
  std::size_t quantile_window = 256;
  bool spending_gate = true;
};

/// Runtime wrapper over the decision rules above; owns the state and, for
/// Split, the generator for eta and the random-branch draw.
class BudgetManager {
 public:
  BudgetManager(const BudgetConfig& config, Rng rng);

  bool decide(double u, double b);

  BudgetKind kind() const noexcept { return config_.kind; }
  /// VarUn/Split: theta. QuantileFilter: last quantile. Random: the budget.
  double threshold() const noexcept { return threshold_; }
  double spent() const noexcept;

 private:
  BudgetConfig config_;
  Rng rng_;
  std::variant<VarUnState, SpendingState, QuantileFilterState> state_;
  double threshold_;
};

}  // namespace rvcal
