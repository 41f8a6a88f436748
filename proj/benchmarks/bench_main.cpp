#include <benchmark/benchmark.h>

#include <vector>

#include "rvcal/budget.hpp"
#include "rvcal/data.hpp"
#include "rvcal/discretizer.hpp"
#include "rvcal/stream.hpp"
#include "rvcal/utility.hpp"

namespace {

using namespace rvcal;

std::vector<LabeledSample> window(std::size_t n) {
  SyntheticSpec spec;
  spec.length = n;
  spec.seed = 1;
  return generate_synthetic(spec).samples;
}

void BM_DiscretizerFit(benchmark::State& state) {
  const auto data = window(static_cast<std::size_t>(state.range(0)));
  std::vector<double> y;
  for (const auto& s : data) y.push_back(s.target);
  const int k = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(Discretizer::fit(y, k));
}
BENCHMARK(BM_DiscretizerFit)->Args({500, 2})->Args({500, 16})->Args({5000, 16});

void BM_RvcTrain(benchmark::State& state) {
  const auto data = window(500);
  RvcConfig cfg;
  cfg.classifier.kind = state.range(0) == 0 ? ClassifierKind::Logistic : ClassifierKind::Knn;
  for (auto _ : state) benchmark::DoNotOptimize(RvcUtility::train(data, cfg));
  state.SetLabel(state.range(0) == 0 ? "logistic" : "knn");
}
BENCHMARK(BM_RvcTrain)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_RvcUtility(benchmark::State& state) {
  const auto data = window(500);
  RvcConfig cfg;
  cfg.classifier.kind = state.range(0) == 0 ? ClassifierKind::Logistic : ClassifierKind::Knn;
  const auto est = RvcUtility::train(data, cfg);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(est.utility(data[i++ % data.size()].features));
  state.SetLabel(state.range(0) == 0 ? "logistic" : "knn");
}
BENCHMARK(BM_RvcUtility)->Arg(0)->Arg(1);

void BM_QbcTrainAndQuery(benchmark::State& state) {
  const auto data = window(500);
  for (auto _ : state) {
    const auto est = QbcUtility::train(data, {}, Rng(3));
    benchmark::DoNotOptimize(est.utility(data[0].features));
  }
}
BENCHMARK(BM_QbcTrainAndQuery)->Unit(benchmark::kMillisecond);

void BM_VarUnDecide(benchmark::State& state) {
  BudgetManager m({BudgetKind::VarUn}, Rng(0));
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(m.decide(rng.uniform(), 0.1));
}
BENCHMARK(BM_VarUnDecide);

void BM_QuantileDecide(benchmark::State& state) {
  BudgetManager m({BudgetKind::QuantileFilter}, Rng(0));
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(m.decide(rng.exponential(), 0.1));
}
BENCHMARK(BM_QuantileDecide);

// Whole prequential run: 2000 evaluated steps, k-NN RvC + VarUn.
void BM_StreamRun(benchmark::State& state) {
  const auto data = window(2100);
  Strategy s;
  s.name = "rvc_varun";
  s.rvc.classifier.kind = ClassifierKind::Knn;
  const double b = static_cast<double>(state.range(0)) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(run_stream(data, s, b, {}, 7).rmse());
  state.SetItemsProcessed(state.iterations() * 2000);
}
BENCHMARK(BM_StreamRun)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
