// Acceptance suite: one PASS/FAIL/SKIP line per criterion.
//   rvcal_acceptance            run every criterion
//   rvcal_acceptance 3 5        run criteria 3 and 5
// Exit status is 0 when no selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/kmeans_oracle.hpp"
#include "rvcal/budget.hpp"
#include "rvcal/cli/commands.hpp"
#include "rvcal/data.hpp"
#include "rvcal/discretizer.hpp"
#include "rvcal/experiment.hpp"
#include "rvcal/metrics.hpp"
#include "rvcal/offline.hpp"
#include "rvcal/rng.hpp"
#include "rvcal/stream.hpp"
#include "rvcal/utility.hpp"

namespace {

using namespace rvcal;
namespace fs = std::filesystem;

enum class Verdict { Pass, Fail, Skip };

struct Outcome {
  Verdict verdict = Verdict::Fail;
  std::string detail;
};

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Collects failed checks; the criterion passes when none failed.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    failed_ += ok ? 0 : 1;
  }
  Outcome outcome(const std::string& summary) const {
    if (failed_ == 0) return {Verdict::Pass, summary};
    std::string d = std::to_string(failed_) + "/" + std::to_string(total_) + " checks failed";
    for (const auto& f : failures_) d += "; " + f;
    return {Verdict::Fail, d};
  }

 private:
  int total_ = 0;
  int failed_ = 0;
  std::vector<std::string> failures_;
};

Strategy make_strategy(const std::string& name, UtilityKind utility, BudgetKind budget) {
  Strategy s;
  s.name = name;
  s.utility = utility;
  s.budget.kind = budget;
  // Logistic retraining on every acquisition is too slow for 50-seed sweeps on one core.
  s.rvc.classifier.kind = ClassifierKind::Knn;
  return s;
}

std::vector<Strategy> streaming_strategies() {
  return {make_strategy("rvc_varun", UtilityKind::Rvc, BudgetKind::VarUn),
          make_strategy("rvc_split", UtilityKind::Rvc, BudgetKind::Split),
          make_strategy("random", UtilityKind::Random, BudgetKind::Random),
          make_strategy("qbc_quantile", UtilityKind::Qbc, BudgetKind::QuantileFilter)};
}

std::vector<LabeledSample> abrupt_stream(std::uint64_t seed, std::size_t length = 2100) {
  SyntheticSpec spec;
  spec.kind = DriftKind::Abrupt;
  spec.length = length;
  spec.seed = seed;
  return generate_synthetic(spec).samples;
}

// 1. Exact formula examples.
Outcome formula_fidelity() {
  Checks c;
  c.expect(member_uncertainty(std::vector<double>{1, 0, 0}) == 0.0, "u'([1,0,0]) = 0");
  c.expect(member_uncertainty(std::vector<double>{0.25, 0.25, 0.25, 0.25}) == 0.75, "u'(uniform K=4) = 0.75");
  c.expect(member_uncertainty(std::vector<double>{0.2, 0.5, 0.3}) == 0.5, "u'([0.2,0.5,0.3]) = 0.5");
  c.expect(mean_uncertainty(std::vector<double>{0.5, 0.75}) == 0.625, "mean(0.5, 0.75) = 0.625");
  c.expect(mean_uncertainty(std::vector<double>{0, 0, 0, 0}) == 0.0, "one-hot members give 0");
  c.expect(committee_disagreement(std::vector<double>(10, 7.0)) == 0.0, "equal committee gives 0");
  c.expect(committee_disagreement(std::vector<double>{0, 2}) == 1.0, "std{0,2} = 1");
  c.expect(committee_disagreement(std::vector<double>{1, 1, 3, 3}) == 1.0, "std{1,1,3,3} = 1");

  VarUnState a;
  const bool la = varun_decide(a, 0.5, 0.2);
  c.expect(la && a.theta == 0.99 && a.spent == 1.0 / 256.0, "VarUn acquire branch");
  VarUnState b;
  b.theta = 0.3;
  const bool lb = varun_decide(b, 0.5, 0.2);
  c.expect(!lb && b.theta == 0.3 * 1.01 && b.spent == 0.0, "VarUn widen branch");
  for (double u : {0.0, 0.37, 1.0}) {
    VarUnState o;
    o.spent = 0.25;
    const bool lo = varun_decide(o, u, 0.2);
    c.expect(!lo && o.theta == 1.0 && o.spent == 255.0 * 0.25 / 256.0, "VarUn over-budget branch");
  }
  return c.outcome("uncertainty, ensemble-mean and committee examples and three VarUn branches exact");
}

// 2. Realized labeling rate of each manager in the full streaming loop.
Outcome budget_compliance() {
  Checks c;
  std::string summary;
  const std::vector<double> budgets{0.05, 0.1, 0.2, 0.4};
  const std::size_t seeds = 20;
  for (const auto& s : streaming_strategies()) {
    summary += s.name + ":";
    for (double b : budgets) {
      double rate = 0.0;
      for (std::size_t seed = 0; seed < seeds; ++seed) {
        const auto data = abrupt_stream(500 + seed);
        rate += run_stream(data, s, b, {}, seed).label_rate() / static_cast<double>(seeds);
      }
      const double tol = std::max(0.03, 0.25 * b);
      c.expect(std::abs(rate - b) <= tol, s.name + " b=" + fmt("%g", b) + " rate=" + fmt("%.4f", rate));
      summary += fmt(" %.3f", rate);
    }
    summary += "  ";
  }
  return c.outcome("rates for b=0.05/0.1/0.2/0.4 " + summary);
}

// 3. Fitted discretizer SSE against the exact dynamic program.
Outcome discretizer_optimality() {
  Checks c;
  Rng rng(2718);
  double worst = 0.0;
  for (int inst = 0; inst < 200; ++inst) {
    const int k = 1 + static_cast<int>(rng.index(5));
    const std::size_t n = static_cast<std::size_t>(k) + rng.index(31 - static_cast<std::size_t>(k));
    std::vector<double> y(n);
    const int style = inst % 3;
    for (auto& v : y) {
      if (style == 0) v = rng.normal();
      else if (style == 1) v = static_cast<double>(rng.index(6));  // heavy ties
      else v = rng.exponential() * 10.0;
    }
    if (count_distinct(y) < static_cast<std::size_t>(k)) {
      --inst;
      continue;
    }
    const auto d = Discretizer::fit(y, k);
    double sse = 0.0;
    for (double v : y) {
      const double m = d.class_means()[static_cast<std::size_t>(d.classify(v))];
      sse += (v - m) * (v - m);
    }
    const double best = oracle::optimal_sse_dp(y, k);
    const double rel = best > 0 ? (sse - best) / best : sse;
    worst = std::max(worst, rel);
    c.expect(sse <= best * (1.0 + 1e-6) + 1e-12, "instance " + std::to_string(inst) + " rel=" + fmt("%.3g", rel));
  }
  return c.outcome("200 instances, worst relative excess " + fmt("%.3g", worst));
}

// 4. Offline utility/error relation on heteroscedastic data.
Outcome offline_correlation() {
  Checks c;
  const std::size_t seeds = 10;
  double rho = 0.0;
  std::vector<double> bins(10, 0.0);
  for (std::size_t seed = 0; seed < seeds; ++seed) {
    SyntheticSpec spec;
    spec.kind = DriftKind::Heteroscedastic;
    spec.length = 10000;
    spec.seed = seed;
    OfflineConfig cfg;
    cfg.estimators = {OfflineEstimator::Rvc};
    cfg.rvc.classifier.kind = ClassifierKind::Knn;
    cfg.seed = seed;
    const auto res = run_offline_eval(generate_synthetic(spec).samples, cfg);
    const auto& e = res.at("rvc");
    rho += e.rho / static_cast<double>(seeds);
    for (std::size_t b = 0; b < 10; ++b) bins[b] += e.bins[b].mean / static_cast<double>(seeds);
  }
  int rising = 0;
  for (std::size_t b = 0; b + 1 < 10; ++b) rising += bins[b + 1] >= bins[b] ? 1 : 0;
  c.expect(rho > 0.2, "mean rho " + fmt("%.4f", rho) + " <= 0.2");
  c.expect(rising >= 7, std::to_string(rising) + "/9 non-decreasing bin transitions");
  return c.outcome("mean rho " + fmt("%.4f", rho) + ", " + std::to_string(rising) + "/9 non-decreasing bins");
}

// 5. Streaming comparison on the abrupt-drift stream.
Outcome streaming_improvement() {
  Checks c;
  const auto strategies = streaming_strategies();
  const std::vector<double> budgets{0.05, 0.1, 0.2};
  const std::size_t seeds = 50;
  std::vector<std::vector<double>> mean(strategies.size(), std::vector<double>(budgets.size(), 0.0));
  for (std::size_t seed = 0; seed < seeds; ++seed) {
    const auto data = abrupt_stream(seed);
    ExperimentPlan plan;
    plan.budgets = budgets;
    plan.trials = 1;
    plan.seed = 1000 + seed;
    const auto r = run_experiment(plan, data, strategies);
    for (std::size_t s = 0; s < strategies.size(); ++s) {
      for (std::size_t b = 0; b < budgets.size(); ++b) mean[s][b] += r.mean_rmse[s][b] / static_cast<double>(seeds);
    }
  }
  double rvc_rank = 0.0, base_rank = 0.0;
  std::string table;
  for (std::size_t b = 0; b < budgets.size(); ++b) {
    std::vector<double> column;
    for (const auto& row : mean) column.push_back(row[b]);
    const auto ranks = average_ranks(column);
    rvc_rank += (ranks[0] + ranks[1]) / (2.0 * static_cast<double>(budgets.size()));
    base_rank += (ranks[2] + ranks[3]) / (2.0 * static_cast<double>(budgets.size()));
  }
  for (std::size_t s = 0; s < strategies.size(); ++s) {
    table += " " + strategies[s].name + "=" + fmt("%.4f", mean[s][0]) + "/" + fmt("%.4f", mean[s][1]) + "/" +
             fmt("%.4f", mean[s][2]);
  }
  c.expect(mean[0][1] <= mean[2][1], "b=0.1 RvC+VarUn " + fmt("%.4f", mean[0][1]) + " > Random " + fmt("%.4f", mean[2][1]));
  c.expect(rvc_rank < base_rank, "RvC mean rank " + fmt("%.3f", rvc_rank) + " not below baselines " + fmt("%.3f", base_rank));
  const std::string summary = "RvC mean rank " + fmt("%.3f", rvc_rank) + " vs baselines " + fmt("%.3f", base_rank) + ";" + table;
  auto out = c.outcome(summary);
  if (out.verdict == Verdict::Fail) out.detail += " |" + table;
  return out;
}

// 6. Predictions at steps <= t never see the label of step t.
Outcome prequential_purity() {
  Checks c;
  const auto strategies = streaming_strategies();
  Rng rng(606);
  for (int probe = 0; probe < 10; ++probe) {
    const auto& s = strategies[rng.index(strategies.size())];
    const double b = 0.05 + 0.35 * rng.uniform();
    const auto data = abrupt_stream(7000 + static_cast<std::uint64_t>(probe));
    const std::size_t t = 100 + rng.index(data.size() - 100);
    auto perturbed = data;
    perturbed[t].target += 50.0 * (1.0 + rng.uniform());
    const std::uint64_t seed = rng.next_u64();
    const auto base = run_stream(data, s, b, {}, seed);
    const auto alt = run_stream(perturbed, s, b, {}, seed);
    bool same = true;
    for (std::size_t i = 0; i < base.steps.size() && base.steps[i].step <= t; ++i) {
      same = same && base.steps[i].prediction == alt.steps[i].prediction && base.steps[i].utility == alt.steps[i].utility &&
             base.steps[i].acquired == alt.steps[i].acquired;
    }
    c.expect(same, s.name + " probe at t=" + std::to_string(t));
  }
  return c.outcome("10 probes, no logged prediction at or before the perturbed step changed");
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// 7. Two `run` executions give byte-identical outputs.
Outcome determinism() {
  Checks c;
  const fs::path dir = fs::temp_directory_path() / "rvcal_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "config.json");
    cfg << R"({
      "dataset": {"synthetic": {"kind": "abrupt", "length": 4000, "dim": 5, "seed": 11}},
      "strategies": [
        {"name": "rvc_varun", "utility": "rvc", "budget": "varun", "classifier": {"kind": "knn"}},
        {"name": "rvc_split", "utility": "rvc", "budget": "split", "classifier": {"kind": "knn"}},
        {"name": "random", "utility": "random", "budget": "random"},
        {"name": "qbc_quantile", "utility": "qbc", "budget": "quantile"}
      ],
      "budgets": [0.1, 0.2],
      "trials": 2,
      "seed": 42
    })";
  }
  std::ostringstream err;
  const int a = cli::cmd_run(dir / "config.json", err, dir / "a");
  const int b = cli::cmd_run(dir / "config.json", err, dir / "b");
  c.expect(a == 0 && b == 0, "run failed: " + err.str());
  std::size_t files = 0;
  if (a == 0 && b == 0) {
    for (const auto& entry : fs::recursive_directory_iterator(dir / "a")) {
      if (!entry.is_regular_file()) continue;
      const auto rel = fs::relative(entry.path(), dir / "a");
      c.expect(slurp(entry.path()) == slurp(dir / "b" / rel), "differs: " + rel.string());
      ++files;
    }
    c.expect(files == 16 + 3, std::to_string(files) + " output files");
  }
  fs::remove_all(dir);
  return c.outcome(std::to_string(files) + " files byte-identical across two runs");
}

// 8. Optional House smoke run.
Outcome house_smoke() {
  const char* path = std::getenv("RVCAL_HOUSE_CSV");
  if (path == nullptr || *path == '\0' || !fs::exists(path)) {
    return {Verdict::Skip, "set RVCAL_HOUSE_CSV to the California housing CSV to enable"};
  }
  Checks c;
  const auto data = load_csv(path, *preset_dataset("house"));
  c.expect(data.rows_read() == 20640, std::to_string(data.rows_read()) + " rows");
  c.expect(data.dim() == 8, std::to_string(data.dim()) + " features");
  ExperimentPlan plan;
  plan.dataset = "house";
  plan.budgets = {0.1};
  plan.trials = 1;
  Strategy s;
  s.name = "rvc_varun";
  const auto r = run_experiment(plan, data.samples, std::vector<Strategy>{s});
  c.expect(std::isfinite(r.average_rmse[0]), "non-finite RMSE");
  return c.outcome("20640 rows (" + std::to_string(data.dropped_rows) + " dropped for missing values), 8 features, 1-trial run RMSE " +
                   fmt("%.6g", r.average_rmse[0]));
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "formula fidelity", 1.0, formula_fidelity},
      {2, "budget compliance", 60.0, budget_compliance},
      {3, "discretizer optimality", 30.0, discretizer_optimality},
      {4, "offline correlation", 300.0, offline_correlation},
      {5, "streaming improvement", 900.0, streaming_improvement},
      {6, "prequential purity", 60.0, prequential_purity},
      {7, "determinism", 300.0, determinism},
      {8, "house smoke (optional)", 600.0, house_smoke},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  int failures = 0;
  for (const auto& cr : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), cr.id) == selected.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = cr.run();
    } catch (const std::exception& e) {
      out = {Verdict::Fail, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (out.verdict != Verdict::Skip && secs >= cr.limit_seconds) {
      out.verdict = Verdict::Fail;
      out.detail += "; exceeded " + fmt("%g", cr.limit_seconds) + " s";
    }
    const char* tag = out.verdict == Verdict::Pass ? "PASS" : out.verdict == Verdict::Skip ? "SKIP" : "FAIL";
    std::printf("[%s] C%d %s: %s (%.2f s)\n", tag, cr.id, cr.title, out.detail.c_str(), secs);
    std::fflush(stdout);
    failures += out.verdict == Verdict::Fail ? 1 : 0;
  }
  return failures == 0 ? 0 : 1;
}
