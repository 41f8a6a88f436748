#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "rvcal/cli/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Streaming active learning for regression via classification"};
  app.require_subcommand(1);

  std::string run_config;
  auto* run = app.add_subcommand("run", "Run a prequential streaming experiment");
  run->add_option("config", run_config, "Experiment config (JSON)")->required();

  std::string offline_config;
  auto* offline = app.add_subcommand("offline", "Run the sequential cross-validation utility evaluation");
  offline->add_option("config", offline_config, "Experiment config (JSON)")->required();

  rvcal::SyntheticSpec spec;
  std::string kind = "abrupt";
  std::string out;
  std::size_t drift_position = 0;
  auto* synth = app.add_subcommand("synth", "Write a synthetic regression stream as CSV");
  synth->add_option("--kind", kind, "abrupt, gradual or heteroscedastic")
      ->check(CLI::IsMember({"abrupt", "gradual", "heteroscedastic"}));
  synth->add_option("--length", spec.length, "Number of samples")->capture_default_str();
  synth->add_option("--dim", spec.dim, "Number of features")->capture_default_str();
  synth->add_option("--seed", spec.seed, "Generator seed")->capture_default_str();
  synth->add_option("--noise", spec.noise, "Noise scale")->capture_default_str();
  auto* drift_opt = synth->add_option("--drift-position", drift_position, "First sample of the new concept (default length/2)");
  synth->add_option("--drift-width", spec.drift_width, "Transition length for gradual drift")->capture_default_str();
  synth->add_option("--out", out, "Output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "rvcal: usage error: " << e.what() << '\n';
    return rvcal::cli::kConfigError;
  }

  if (*run) return rvcal::cli::cmd_run(run_config, std::cerr);
  if (*offline) return rvcal::cli::cmd_offline(offline_config, std::cerr);
  spec.kind = *rvcal::parse_drift_kind(kind);
  if (*drift_opt) spec.drift_position = drift_position;
  return rvcal::cli::cmd_synth(spec, out, std::cerr);
}
