#include "rvcal/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <unordered_set>

#include "rvcal/error.hpp"
#include "rvcal/metrics.hpp"
#include "rvcal/rng.hpp"

namespace rvcal {

const CellResult& ExperimentResult::cell(std::size_t strategy, std::size_t budget, std::size_t trial) const {
  return cells.at((strategy * budgets.size() + budget) * trials + trial);
}

std::vector<std::size_t> segment_starts(const ExperimentPlan& plan, std::size_t dataset_size) {
  if (dataset_size < plan.segment_length) {
    throw Error(Errc::DatasetTooShort, "dataset has " + std::to_string(dataset_size) + " samples, a segment needs " +
                                           std::to_string(plan.segment_length));
  }
  const std::size_t range = dataset_size - plan.segment_length + 1;
  // Starts are distinct whenever the dataset has room for that many.
  const bool distinct = range >= plan.trials;
  std::vector<std::size_t> starts(plan.trials);
  std::unordered_set<std::size_t> used;
  const Rng root(plan.seed);
  for (std::size_t t = 0; t < plan.trials; ++t) {
    Rng trial = root.split(t);
    std::size_t s = trial.index(range);
    while (distinct && used.count(s) != 0) s = trial.index(range);
    used.insert(s);
    starts[t] = s;
  }
  return starts;
}

std::uint64_t cell_seed(const ExperimentPlan& plan, std::size_t trial, std::size_t budget) {
  return Rng(plan.seed).split(trial).split(1 + budget).seed();
}

void aggregate(ExperimentResult& r) {
  const std::size_t ns = r.strategies.size();
  const std::size_t nb = r.budgets.size();
  r.mean_rmse.assign(ns, std::vector<double>(nb, 0.0));
  r.mean_label_rate.assign(ns, std::vector<double>(nb, 0.0));
  r.budget_ranks.assign(ns, std::vector<double>(nb, 0.0));
  r.average_rmse.assign(ns, 0.0);
  for (std::size_t s = 0; s < ns; ++s) {
    for (std::size_t b = 0; b < nb; ++b) {
      double rm = 0.0, lr = 0.0;
      for (std::size_t t = 0; t < r.trials; ++t) {
        rm += r.cell(s, b, t).rmse;
        lr += r.cell(s, b, t).label_rate;
      }
      r.mean_rmse[s][b] = rm / static_cast<double>(r.trials);
      r.mean_label_rate[s][b] = lr / static_cast<double>(r.trials);
    }
    double sum = 0.0;
    for (double v : r.mean_rmse[s]) sum += v;
    r.average_rmse[s] = nb == 0 ? 0.0 : sum / static_cast<double>(nb);
  }
  for (std::size_t b = 0; b < nb; ++b) {
    std::vector<double> column(ns);
    for (std::size_t s = 0; s < ns; ++s) column[s] = r.mean_rmse[s][b];
    const auto ranks = average_ranks(column);
    for (std::size_t s = 0; s < ns; ++s) r.budget_ranks[s][b] = ranks[s];
  }
  r.ranks = average_ranks(r.average_rmse);
}

ExperimentResult run_experiment(const ExperimentPlan& plan, std::span<const LabeledSample> data,
                                std::span<const Strategy> strategies, const RecordSink& sink) {
  if (plan.trials == 0) throw Error(Errc::InvalidArgument, "an experiment needs at least one trial");
  if (plan.warmup >= plan.segment_length) throw Error(Errc::InvalidArgument, "warmup must be shorter than a segment");
  if (strategies.empty()) throw Error(Errc::InvalidArgument, "no strategies to run");
  for (const auto& s : strategies) validate(s);

  ExperimentResult result;
  for (const auto& s : strategies) result.strategies.push_back(s.name);
  result.budgets = plan.budgets;
  result.trials = plan.trials;
  result.segment_starts = segment_starts(plan, data.size());

  const std::size_t nb = plan.budgets.size();
  result.cells.resize(strategies.size() * nb * plan.trials);
  for (std::size_t s = 0; s < strategies.size(); ++s) {
    for (std::size_t b = 0; b < nb; ++b) {
      for (std::size_t t = 0; t < plan.trials; ++t) {
        auto& c = result.cells[(s * nb + b) * plan.trials + t];
        c.strategy = s;
        c.budget = b;
        c.trial = t;
        c.seed = cell_seed(plan, t, b);
        c.segment_start = result.segment_starts[t];
      }
    }
  }

  const StreamSettings settings{plan.warmup, plan.window_capacity, plan.retrain_interval};
  std::atomic<std::size_t> next{0};
  std::mutex sink_mutex;
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= result.cells.size()) return;
      {
        std::lock_guard lock(failure_mutex);
        if (failure) return;
      }
      auto& c = result.cells[i];
      try {
        const auto segment = data.subspan(c.segment_start, plan.segment_length);
        StreamRunRecord rec = run_stream(segment, strategies[c.strategy], plan.budgets[c.budget], settings, c.seed);
        rec.dataset = plan.dataset;
        rec.segment_start = c.segment_start;
        c.rmse = rec.rmse();
        c.label_rate = rec.label_rate();
        if (sink) {
          std::lock_guard lock(sink_mutex);
          sink(rec, c);
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  unsigned threads = plan.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : plan.threads;
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, result.cells.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  aggregate(result);
  return result;
}

}  // namespace rvcal
