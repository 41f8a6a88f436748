#include "rvcal/cli/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rvcal/error.hpp"

namespace rvcal::cli {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

// Rejects keys the schema does not know so typos surface as errors.
void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) fail(where, "expected an object");
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) fail(where, "unknown key '" + key + "'");
  }
}

template <typename T>
T get(const json& j, const char* key, const std::string& where, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    fail(where + "." + key, "wrong type");
  }
}

std::size_t get_count(const json& j, const char* key, const std::string& where, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) fail(where + "." + key, "expected a non-negative integer");
  return v.get<std::size_t>();
}

std::string get_enum(const json& j, const char* key, const std::string& where, const std::string& fallback,
                     std::initializer_list<const char*> allowed) {
  const auto v = get<std::string>(j, key, where, fallback);
  for (const char* a : allowed) {
    if (v == a) return v;
  }
  std::string list;
  for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
  fail(where + "." + key, "unknown value '" + v + "' (expected one of: " + list + ")");
}

ClassifierConfig parse_classifier(const json& j, const std::string& where) {
  check_keys(j, where, {"kind", "l2", "learning_rate", "max_iterations", "gradient_tolerance", "neighbors"});
  ClassifierConfig c;
  c.kind = get_enum(j, "kind", where, "logistic", {"logistic", "knn"}) == "knn" ? ClassifierKind::Knn
                                                                                  : ClassifierKind::Logistic;
  c.l2 = get(j, "l2", where, c.l2);
  c.learning_rate = get(j, "learning_rate", where, c.learning_rate);
  c.max_iterations = get(j, "max_iterations", where, c.max_iterations);
  c.gradient_tolerance = get(j, "gradient_tolerance", where, c.gradient_tolerance);
  c.neighbors = get_count(j, "neighbors", where, c.neighbors);
  if (c.l2 < 0 || c.learning_rate <= 0 || c.max_iterations < 0) fail(where, "invalid logistic settings");
  return c;
}

RegressorConfig parse_regressor(const json& j, const std::string& where, RegressorKind default_kind) {
  check_keys(j, where, {"kind", "penalty", "neighbors"});
  RegressorConfig r;
  r.kind = get_enum(j, "kind", where, default_kind == RegressorKind::Knn ? "knn" : "ridge", {"ridge", "knn"}) == "knn"
               ? RegressorKind::Knn
               : RegressorKind::Ridge;
  r.ridge_penalty = get(j, "penalty", where, r.ridge_penalty);
  r.neighbors = get_count(j, "neighbors", where, r.neighbors);
  if (r.ridge_penalty < 0) fail(where + ".penalty", "must be >= 0");
  return r;
}

RvcConfig parse_rvc(const json& j, const std::string& where) {
  RvcConfig rvc;
  if (j.contains("class_counts")) {
    rvc.class_counts = get<std::vector<int>>(j, "class_counts", where, {});
    if (rvc.class_counts.empty()) fail(where + ".class_counts", "must not be empty");
    for (int k : rvc.class_counts) {
      if (k < 2) fail(where + ".class_counts", "every class count must be >= 2");
    }
  }
  if (j.contains("classifier")) rvc.classifier = parse_classifier(j.at("classifier"), where + ".classifier");
  return rvc;
}

QbcConfig parse_qbc(const json& j, const std::string& where) {
  check_keys(j, where, {"size", "fraction", "member"});
  QbcConfig q;
  q.committee_size = get_count(j, "size", where, q.committee_size);
  q.subsample_fraction = get(j, "fraction", where, q.subsample_fraction);
  if (j.contains("member")) q.member = parse_regressor(j.at("member"), where + ".member", RegressorKind::Knn);
  if (q.committee_size < 2) fail(where + ".size", "a committee needs at least 2 members");
  if (!(q.subsample_fraction > 0 && q.subsample_fraction <= 1)) fail(where + ".fraction", "must lie in (0, 1]");
  return q;
}

Strategy parse_strategy(const json& j, const std::string& where) {
  check_keys(j, where,
             {"name", "utility", "budget", "regressor", "class_counts", "classifier", "committee", "step",
              "initial_threshold", "spending_window", "split_ratio", "quantile_window", "spending_gate",
              "rvc_regression", "inverse"});
  Strategy s;
  if (!j.contains("name")) fail(where, "missing 'name'");
  s.name = get<std::string>(j, "name", where, "");
  if (s.name.empty() || s.name.find_first_of("/\\,\"\n") != std::string::npos) {
    fail(where + ".name", "must be non-empty without '/', '\\', ',', '\"' or newlines");
  }
  const auto utility = get_enum(j, "utility", where, "rvc", {"rvc", "qbc", "random"});
  s.utility = utility == "qbc" ? UtilityKind::Qbc : utility == "random" ? UtilityKind::Random : UtilityKind::Rvc;
  const auto budget = get_enum(j, "budget", where, utility == "qbc" ? "quantile" : utility == "random" ? "random" : "varun",
                               {"varun", "split", "random", "quantile"});
  s.budget.kind = budget == "split"    ? BudgetKind::Split
                  : budget == "random" ? BudgetKind::Random
                  : budget == "quantile" ? BudgetKind::QuantileFilter
                                         : BudgetKind::VarUn;
  s.budget.step = get(j, "step", where, s.budget.step);
  s.budget.initial_threshold = get(j, "initial_threshold", where, s.budget.initial_threshold);
  s.budget.window = get_count(j, "spending_window", where, s.budget.window);
  s.budget.split_ratio = get(j, "split_ratio", where, s.budget.split_ratio);
  s.budget.quantile_window = get_count(j, "quantile_window", where, s.budget.quantile_window);
  s.budget.spending_gate = get(j, "spending_gate", where, s.budget.spending_gate);
  if (s.budget.step <= 0 || s.budget.step >= 1) fail(where + ".step", "must lie in (0, 1)");
  if (s.budget.window < 1 || s.budget.quantile_window < 1) fail(where, "windows must hold at least one entry");
  if (s.budget.split_ratio < 0 || s.budget.split_ratio > 1) fail(where + ".split_ratio", "must lie in [0, 1]");

  if (j.contains("regressor")) s.regressor = parse_regressor(j.at("regressor"), where + ".regressor", RegressorKind::Ridge);
  s.rvc = parse_rvc(j, where);
  if (j.contains("committee")) s.qbc = parse_qbc(j.at("committee"), where + ".committee");
  s.rvc_regression = get(j, "rvc_regression", where, false);
  s.inverse = get_enum(j, "inverse", where, "mean", {"mean", "median"}) == "median" ? InverseMode::Median
                                                                                   : InverseMode::Mean;
  try {
    validate(s);
  } catch (const Error& e) {
    fail(where, e.what());
  }
  return s;
}

DataSource parse_data(const json& j, const std::filesystem::path& base_dir) {
  const std::string where = "dataset";
  check_keys(j, where,
             {"name", "preset", "path", "target", "features", "expected_rows", "missing", "synthetic"});
  DataSource src;
  if (j.contains("synthetic")) {
    if (j.contains("path")) fail(where, "give either 'path' or 'synthetic', not both");
    const auto& s = j.at("synthetic");
    const std::string sw = where + ".synthetic";
    check_keys(s, sw, {"kind", "length", "dim", "drift_position", "drift_width", "noise", "seed"});
    SyntheticSpec spec;
    const auto kind = parse_drift_kind(get_enum(s, "kind", sw, "abrupt", {"abrupt", "gradual", "heteroscedastic"}));
    spec.kind = *kind;
    spec.length = get_count(s, "length", sw, spec.length);
    spec.dim = get_count(s, "dim", sw, spec.dim);
    if (s.contains("drift_position")) spec.drift_position = get_count(s, "drift_position", sw, 0);
    spec.drift_width = get_count(s, "drift_width", sw, spec.drift_width);
    spec.noise = get(s, "noise", sw, spec.noise);
    spec.seed = get<std::uint64_t>(s, "seed", sw, spec.seed);
    src.synthetic = spec;
    src.csv_spec.name = get<std::string>(j, "name", where, std::string("synthetic-") + std::string(to_string(spec.kind)));
    return src;
  }
  if (!j.contains("path")) fail(where, "missing 'path' (or 'synthetic')");
  std::filesystem::path path = get<std::string>(j, "path", where, "");
  src.csv = path.is_absolute() ? path : base_dir / path;

  DatasetSpec spec;
  if (j.contains("preset")) {
    const auto name = get<std::string>(j, "preset", where, "");
    const auto preset = preset_dataset(name);
    if (!preset) fail(where + ".preset", "unknown preset '" + name + "' (expected house, solar or bike)");
    spec = *preset;
  }
  spec.name = get<std::string>(j, "name", where, spec.name.empty() ? src.csv->stem().string() : spec.name);
  spec.target = get<std::string>(j, "target", where, spec.target);
  if (j.contains("features")) spec.features = get<std::vector<std::string>>(j, "features", where, {});
  if (j.contains("expected_rows")) spec.expected_rows = get_count(j, "expected_rows", where, 0);
  spec.missing = get_enum(j, "missing", where, "drop", {"drop", "error"}) == "error" ? MissingPolicy::Error
                                                                                   : MissingPolicy::Drop;
  if (spec.target.empty()) fail(where, "missing 'target'");
  for (const auto& f : spec.features) {
    if (f == spec.target) fail(where + ".features", "the target column '" + f + "' cannot also be a feature");
  }
  src.csv_spec = spec;
  return src;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  const std::string where = "config";
  check_keys(root, where,
             {"dataset", "strategies", "budgets", "trials", "seed", "segment_length", "warmup", "window_capacity",
              "retrain_interval", "threads", "output_dir", "offline"});

  ExperimentConfig cfg;
  if (!root.contains("dataset")) fail(where, "missing 'dataset'");
  cfg.data = parse_data(root.at("dataset"), base_dir);

  auto& plan = cfg.plan;
  plan.dataset = cfg.data.csv_spec.name;
  if (root.contains("budgets")) plan.budgets = get<std::vector<double>>(root, "budgets", where, {});
  if (plan.budgets.empty()) fail(where + ".budgets", "must not be empty");
  for (double b : plan.budgets) {
    if (!(b > 0 && b < 1)) fail(where + ".budgets", "every budget must lie in (0, 1)");
  }
  plan.trials = get_count(root, "trials", where, plan.trials);
  plan.seed = get<std::uint64_t>(root, "seed", where, plan.seed);
  plan.segment_length = get_count(root, "segment_length", where, plan.segment_length);
  plan.warmup = get_count(root, "warmup", where, plan.warmup);
  plan.window_capacity = get_count(root, "window_capacity", where, plan.window_capacity);
  plan.retrain_interval = get_count(root, "retrain_interval", where, plan.retrain_interval);
  plan.threads = static_cast<unsigned>(get_count(root, "threads", where, plan.threads));
  if (plan.trials < 1) fail(where + ".trials", "must be >= 1");
  if (plan.warmup < 2 || plan.warmup >= plan.segment_length) fail(where + ".warmup", "must lie in [2, segment_length)");
  if (plan.window_capacity < plan.warmup) fail(where + ".window_capacity", "must hold at least the warmup samples");
  if (plan.retrain_interval < 1) fail(where + ".retrain_interval", "must be >= 1");

  if (root.contains("strategies")) {
    const auto& list = root.at("strategies");
    if (!list.is_array() || list.empty()) fail(where + ".strategies", "expected a non-empty array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      cfg.strategies.push_back(parse_strategy(list[i], where + ".strategies[" + std::to_string(i) + "]"));
    }
    for (std::size_t i = 0; i < cfg.strategies.size(); ++i) {
      for (std::size_t k = 0; k < i; ++k) {
        if (cfg.strategies[i].name == cfg.strategies[k].name) {
          fail(where + ".strategies", "duplicate name '" + cfg.strategies[i].name + "'");
        }
      }
    }
  }

  if (root.contains("offline")) {
    const auto& o = root.at("offline");
    const std::string ow = where + ".offline";
    check_keys(o, ow, {"folds", "bins", "regressor", "class_counts", "classifier", "committee", "estimators"});
    auto& off = cfg.offline;
    off.folds = get_count(o, "folds", ow, off.folds);
    off.bins = get_count(o, "bins", ow, off.bins);
    if (off.folds < 2) fail(ow + ".folds", "must be >= 2");
    if (off.bins < 1) fail(ow + ".bins", "must be >= 1");
    if (o.contains("regressor")) off.regressor = parse_regressor(o.at("regressor"), ow + ".regressor", RegressorKind::Ridge);
    off.rvc = parse_rvc(o, ow);
    if (o.contains("committee")) off.qbc = parse_qbc(o.at("committee"), ow + ".committee");
    if (o.contains("estimators")) {
      off.estimators.clear();
      for (const auto& name : get<std::vector<std::string>>(o, "estimators", ow, {})) {
        if (name == "rvc") off.estimators.push_back(OfflineEstimator::Rvc);
        else if (name == "qbc") off.estimators.push_back(OfflineEstimator::Qbc);
        else fail(ow + ".estimators", "unknown estimator '" + name + "'");
      }
      if (off.estimators.empty()) fail(ow + ".estimators", "must not be empty");
    }
  }
  cfg.offline.seed = plan.seed;

  std::filesystem::path out = get<std::string>(root, "output_dir", where, cfg.output_dir.string());
  cfg.output_dir = out.is_absolute() ? out : base_dir / out;
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  auto cfg = parse_config(text.str(), path.parent_path());
  if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') cfg.output_dir = dir;
  return cfg;
}

Dataset load_data(const DataSource& source) {
  if (source.synthetic) {
    auto data = generate_synthetic(*source.synthetic);
    data.name = source.csv_spec.name;
    return data;
  }
  return load_csv(*source.csv, source.csv_spec);
}

}  // namespace rvcal::cli
