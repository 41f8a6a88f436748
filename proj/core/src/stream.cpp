#include "rvcal/stream.hpp"

#include <cmath>
#include <memory>
#include <optional>
#include <string>

#include "rvcal/error.hpp"
#include "rvcal/metrics.hpp"
#include "rvcal/rng.hpp"
#include "rvcal/window.hpp"

namespace rvcal {
namespace {

// Sub-stream ids of the per-run generator.
constexpr std::uint64_t kRandomUtilityStream = 1;
constexpr std::uint64_t kBudgetStream = 2;
constexpr std::uint64_t kCommitteeStream = 3;

class Learner {
 public:
  Learner(const Strategy& strategy, std::uint64_t seed)
      : strategy_(strategy),
        committee_rng_(Rng(seed).split(kCommitteeStream)),
        random_(Rng(seed).split(kRandomUtilityStream)) {}

  void train(std::span<const LabeledSample> window) {
    if (strategy_.rvc_regression) {
      window_mean_ = 0.0;
      for (const auto& s : window) window_mean_ += s.target;
      window_mean_ /= static_cast<double>(window.size());
    } else {
      regressor_ = train_regressor(window, strategy_.regressor);
    }
    switch (strategy_.utility) {
      case UtilityKind::Rvc:
        rvc_ = RvcUtility::train(window, strategy_.rvc);
        break;
      case UtilityKind::Qbc:
        qbc_ = QbcUtility::train(window, strategy_.qbc, committee_rng_.split(trainings_));
        break;
      case UtilityKind::Random:
        break;
    }
    ++trainings_;
  }

  double predict(std::span<const double> x) const {
    if (strategy_.rvc_regression) {
      return rvc_.members().empty() ? window_mean_ : rvc_.regress(x, strategy_.inverse);
    }
    return regressor_->predict(x);
  }

  double utility(std::span<const double> x) {
    switch (strategy_.utility) {
      case UtilityKind::Rvc: return rvc_.utility(x);
      case UtilityKind::Qbc: return qbc_->utility(x);
      case UtilityKind::Random: return random_.next();
    }
    return 0.0;
  }

 private:
  const Strategy& strategy_;
  Rng committee_rng_;
  RandomUtility random_;
  std::uint64_t trainings_ = 0;
  std::unique_ptr<Regressor> regressor_;
  RvcUtility rvc_;
  std::optional<QbcUtility> qbc_;
  double window_mean_ = 0.0;
};

}  // namespace

void validate(const Strategy& s) {
  const bool bounded_manager = s.budget.kind == BudgetKind::VarUn || s.budget.kind == BudgetKind::Split;
  if (bounded_manager && s.utility == UtilityKind::Qbc) {
    throw Error(Errc::InvalidArgument, "strategy '" + s.name + "': VarUn/Split need a utility in [0, 1]; QBC is unbounded");
  }
  if ((s.budget.kind == BudgetKind::Random) != (s.utility == UtilityKind::Random)) {
    throw Error(Errc::InvalidArgument, "strategy '" + s.name + "': the random manager pairs only with random utility");
  }
  if (s.rvc_regression && s.utility != UtilityKind::Rvc) {
    throw Error(Errc::InvalidArgument, "strategy '" + s.name + "': RvC regression requires the RvC utility");
  }
  if (s.utility == UtilityKind::Rvc && s.rvc.class_counts.empty()) {
    throw Error(Errc::InvalidArgument, "strategy '" + s.name + "': no RvC class counts");
  }
}

double StreamRunRecord::rmse() const {
  std::vector<double> errors(steps.size());
  for (std::size_t i = 0; i < steps.size(); ++i) errors[i] = steps[i].abs_error;
  return rvcal::rmse(errors);
}

std::size_t StreamRunRecord::acquisitions() const {
  std::size_t n = 0;
  for (const auto& s : steps) n += s.acquired ? 1 : 0;
  return n;
}

double StreamRunRecord::label_rate() const {
  return steps.empty() ? 0.0 : static_cast<double>(acquisitions()) / static_cast<double>(steps.size());
}

StreamRunRecord run_stream(std::span<const LabeledSample> segment, const Strategy& strategy, double budget,
                           const StreamSettings& settings, std::uint64_t seed) {
  validate(strategy);
  if (settings.warmup == 0) throw Error(Errc::InvalidArgument, "warmup must contain at least one sample");
  if (segment.size() <= settings.warmup) {
    throw Error(Errc::DatasetTooShort, "segment of " + std::to_string(segment.size()) +
                                           " samples leaves nothing after a warmup of " +
                                           std::to_string(settings.warmup));
  }
  const std::size_t interval = std::max<std::size_t>(1, settings.retrain_interval);

  LabeledWindow window(settings.window_capacity);
  for (std::size_t i = 0; i < settings.warmup; ++i) window.push(segment[i]);

  Learner learner(strategy, seed);
  learner.train(window.entries());
  BudgetManager manager(strategy.budget, Rng(seed).split(kBudgetStream));

  StreamRunRecord record;
  record.strategy = strategy.name;
  record.budget = budget;
  record.seed = seed;
  record.steps.reserve(segment.size() - settings.warmup);

  std::size_t pending = 0;
  for (std::size_t t = settings.warmup; t < segment.size(); ++t) {
    const auto& item = segment[t];
    StepRecord step;
    step.step = t;
    step.prediction = learner.predict(item.features);
    step.target = item.target;
    step.abs_error = std::abs(step.prediction - item.target);
    step.utility = learner.utility(item.features);
    step.acquired = manager.decide(step.utility, budget);
    step.threshold = manager.threshold();
    step.spent = manager.spent();
    record.steps.push_back(step);

    if (step.acquired) {
      window.push(item);
      if (++pending == interval) {
        learner.train(window.entries());
        pending = 0;
      }
    }
  }
  return record;
}

}  // namespace rvcal
