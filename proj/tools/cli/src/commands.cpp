#include "rvcal/cli/commands.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rvcal/cli/config.hpp"
#include "rvcal/cli/output.hpp"
#include "rvcal/error.hpp"

namespace rvcal::cli {
namespace {

namespace fs = std::filesystem;

bool is_dataset_error(Errc c) {
  switch (c) {
    case Errc::MissingColumn:
    case Errc::UnparsableValue:
    case Errc::EmptyDataset:
    case Errc::RowCountMismatch:
    case Errc::DatasetTooShort:
      return true;
    default:
      return false;
  }
}

// Runs `body`, mapping failures to exit codes with a one-line diagnostic.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  auto one_line = [](std::string s) {
    for (auto& c : s) {
      if (c == '\n' || c == '\r') c = ' ';
    }
    return s;
  };
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "rvcal: config error: " << one_line(e.what()) << '\n';
    return kConfigError;
  } catch (const Error& e) {
    if (e.code() == Errc::InvalidSpec) {
      err << "rvcal: config error: " << one_line(e.what()) << '\n';
      return kConfigError;
    }
    if (is_dataset_error(e.code())) {
      err << "rvcal: dataset error: " << one_line(e.what()) << '\n';
      return kDatasetError;
    }
    err << "rvcal: runtime error: " << one_line(e.what()) << '\n';
    return kRuntimeError;
  } catch (const std::exception& e) {
    err << "rvcal: runtime error: " << one_line(e.what()) << '\n';
    return kRuntimeError;
  }
}

ExperimentConfig load_with_override(const fs::path& config, const std::optional<fs::path>& output_dir) {
  auto cfg = load_config(config);
  if (output_dir) cfg.output_dir = *output_dir;
  return cfg;
}

Dataset load_checked(const ExperimentConfig& cfg) {
  auto data = load_data(cfg.data);
  if (data.samples.empty()) throw Error(Errc::EmptyDataset, "dataset '" + data.name + "' has no samples");
  return data;
}

std::string record_file_name(const std::string& strategy, double budget, std::size_t trial) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "_b%.6g_t%04zu.csv", budget, trial);
  return strategy + buf;
}

std::string record_csv(const StreamRunRecord& r) {
  std::string out = "step,prediction,target,abs_error,utility,acquired,threshold,spent\n";
  out.reserve(out.size() + r.steps.size() * 120);
  for (const auto& s : r.steps) {
    out += std::to_string(s.step);
    for (double v : {s.prediction, s.target, s.abs_error, s.utility}) {
      out += ',';
      out += format_raw(v);
    }
    out += s.acquired ? ",1," : ",0,";
    out += format_raw(s.threshold);
    out += ',';
    out += format_raw(s.spent);
    out += '\n';
  }
  return out;
}

// Round to six significant digits before JSON serialization.
double summary_value(double v) { return std::stod(format_summary(v)); }

}  // namespace

int cmd_run(const fs::path& config, std::ostream& err, const std::optional<fs::path>& output_dir) {
  return guarded(err, [&] {
    const auto cfg = load_with_override(config, output_dir);
    if (cfg.strategies.empty()) throw ConfigError("config: 'strategies' is required for run");
    const auto data = load_checked(cfg);
    if (data.samples.size() < cfg.plan.segment_length) {
      throw Error(Errc::DatasetTooShort, "dataset '" + data.name + "' has " + std::to_string(data.samples.size()) +
                                             " samples, a segment needs " + std::to_string(cfg.plan.segment_length));
    }

    const fs::path records_dir = cfg.output_dir / "records";
    fs::create_directories(records_dir);
    auto plan = cfg.plan;
    plan.dataset = data.name;

    std::vector<std::string> files(cfg.strategies.size() * plan.budgets.size() * plan.trials);
    const auto result = run_experiment(plan, data.samples, cfg.strategies, [&](const StreamRunRecord& r, const CellResult& c) {
      const auto name = record_file_name(r.strategy, r.budget, c.trial);
      write_atomic(records_dir / name, record_csv(r));
      files[(c.strategy * plan.budgets.size() + c.budget) * plan.trials + c.trial] = name;
    });

    std::string index = "strategy,budget,trial,seed,segment_start,rmse,label_rate,file\n";
    for (std::size_t i = 0; i < result.cells.size(); ++i) {
      const auto& c = result.cells[i];
      index += result.strategies[c.strategy] + ',' + format_raw(result.budgets[c.budget]) + ',' + std::to_string(c.trial) +
               ',' + std::to_string(c.seed) + ',' + std::to_string(c.segment_start) + ',' + format_raw(c.rmse) + ',' +
               format_raw(c.label_rate) + ',' + files[i] + '\n';
    }
    write_atomic(records_dir / "index.csv", index);

    std::string csv = "strategy,budget,mean_rmse,mean_label_rate,rank\n";
    nlohmann::ordered_json js;
    js["dataset"] = data.name;
    js["trials"] = plan.trials;
    js["seed"] = plan.seed;
    js["budgets"] = plan.budgets;
    js["strategies"] = nlohmann::ordered_json::array();
    for (std::size_t s = 0; s < result.strategies.size(); ++s) {
      nlohmann::ordered_json entry;
      entry["name"] = result.strategies[s];
      std::vector<double> rm, lr, rk;
      for (std::size_t b = 0; b < result.budgets.size(); ++b) {
        csv += result.strategies[s] + ',' + format_summary(result.budgets[b]) + ',' +
               format_summary(result.mean_rmse[s][b]) + ',' + format_summary(result.mean_label_rate[s][b]) + ',' +
               format_summary(result.budget_ranks[s][b]) + '\n';
        rm.push_back(summary_value(result.mean_rmse[s][b]));
        lr.push_back(summary_value(result.mean_label_rate[s][b]));
        rk.push_back(summary_value(result.budget_ranks[s][b]));
      }
      entry["mean_rmse"] = rm;
      entry["mean_label_rate"] = lr;
      entry["budget_ranks"] = rk;
      entry["average_rmse"] = summary_value(result.average_rmse[s]);
      entry["rank"] = summary_value(result.ranks[s]);
      js["strategies"].push_back(entry);
    }
    for (std::size_t s = 0; s < result.strategies.size(); ++s) {
      double rate = 0.0;
      for (double v : result.mean_label_rate[s]) rate += v / static_cast<double>(result.budgets.size());
      csv += result.strategies[s] + ",average," + format_summary(result.average_rmse[s]) + ',' + format_summary(rate) +
             ',' + format_summary(result.ranks[s]) + '\n';
    }
    write_atomic(cfg.output_dir / "summary.csv", csv);
    write_atomic(cfg.output_dir / "summary.json", js.dump(2) + '\n');
    return static_cast<int>(kOk);
  });
}

int cmd_offline(const fs::path& config, std::ostream& err, const std::optional<fs::path>& output_dir) {
  return guarded(err, [&] {
    const auto cfg = load_with_override(config, output_dir);
    const auto data = load_checked(cfg);
    const auto result = run_offline_eval(data.samples, cfg.offline);
    fs::create_directories(cfg.output_dir);

    std::string points = "estimator,index,percentile,utility,abs_error\n";
    std::string bins = "estimator,bin,lower,upper,count,mean,stddev\n";
    nlohmann::ordered_json rho;
    for (const auto& e : result.estimators) {
      for (std::size_t i = 0; i < e.utility.size(); ++i) {
        points += e.name + ',' + std::to_string(i) + ',' + format_raw(e.percentile[i]) + ',' + format_raw(e.utility[i]) +
                  ',' + format_raw(result.abs_error[i]) + '\n';
      }
      for (std::size_t b = 0; b < e.bins.size(); ++b) {
        const auto& s = e.bins[b];
        bins += e.name + ',' + std::to_string(b) + ',' + format_summary(s.lower) + ',' + format_summary(s.upper) + ',' +
                std::to_string(s.count) + ',' + format_summary(s.mean) + ',' + format_summary(s.stddev) + '\n';
      }
      rho["rho_" + e.name] = summary_value(e.rho);
    }
    write_atomic(cfg.output_dir / "offline_points.csv", points);
    write_atomic(cfg.output_dir / "offline_bins.csv", bins);
    write_atomic(cfg.output_dir / "rho.json", rho.dump(2) + '\n');
    return static_cast<int>(kOk);
  });
}

int cmd_synth(const SyntheticSpec& spec, const fs::path& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto data = generate_synthetic(spec);
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    std::ostringstream csv;
    write_csv(csv, data);
    write_atomic(out, csv.str());
    return static_cast<int>(kOk);
  });
}

}  // namespace rvcal::cli
