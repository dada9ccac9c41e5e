#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>

#include "actkrr/harness.hpp"
#include "actkrr/io.hpp"
#include "actkrr/statdim.hpp"
#include "actkrr/validate.hpp"

namespace {

std::ostream& open_out(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  return file;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"active kernel ridge regression experiments"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  std::uint64_t seed = 0;
  int trials = -1;
  int jobs = 0;

  auto add_common = [&](CLI::App* cmd, bool needs_config) {
    auto* c = cmd->add_option("--config", config_path, "JSON config file");
    if (needs_config) c->required();
    cmd->add_option("--seed", seed, "global seed");
    cmd->add_option("--out", out_path, "output path (default stdout)");
    cmd->add_option("--jobs", jobs, "worker threads (0 = hardware)");
  };

  auto* synth = app.add_subcommand("synth", "synthesize a scenario and print it as JSON");
  add_common(synth, true);

  auto* tune = app.add_subcommand("tune", "run one tuning trial, print a CSV record");
  add_common(tune, true);

  auto* sweep = app.add_subcommand("sweep", "run a sweep, print CSV rows");
  add_common(sweep, true);
  sweep->add_option("--trials", trials, "trials per sweep point (overrides config)");

  auto* statdim = app.add_subcommand("statdim", "statistical dimensions of the grid kernels");
  add_common(statdim, true);

  auto* validate = app.add_subcommand("validate", "run the acceptance criteria");
  add_common(validate, false);

  CLI11_PARSE(app, argc, argv);

  try {
    std::ofstream file;
    if (synth->parsed()) {
      const auto cfg = actkrr::load_config(config_path);
      const actkrr::Scenario sc = actkrr::synth_scenario(cfg.scenario, seed);
      nlohmann::json j = sc;
      open_out(file, out_path) << j.dump(2) << "\n";
    } else if (tune->parsed()) {
      const auto cfg = actkrr::load_config(config_path);
      const actkrr::Scenario sc = actkrr::synth_scenario(cfg.scenario, seed);
      const actkrr::TrialRecord r = actkrr::run_tune(
          sc, cfg.grid, cfg.budget, cfg.sweep.n_override, seed);
      auto& out = open_out(file, out_path);
      out << actkrr::csv_header() << "\n" << actkrr::to_csv(r) << "\n";
    } else if (sweep->parsed()) {
      auto cfg = actkrr::load_config(config_path);
      if (trials > 0) cfg.sweep.trials = trials;
      const auto lines = actkrr::run_sweep(cfg, seed, jobs);
      auto& out = open_out(file, out_path);
      for (const auto& line : lines) out << line << "\n";
    } else if (statdim->parsed()) {
      const auto cfg = actkrr::load_config(config_path);
      const auto specs = actkrr::sm_grid(cfg.grid);
      auto& out = open_out(file, out_path);
      out << "index,params,statdim,gridsize\n";
      double s_max = 0.0;
      for (std::size_t i = 0; i < specs.size(); ++i) {
        const auto est = actkrr::statdim_operator(specs[i], cfg.scenario.T,
                                                  cfg.scenario.epsilon);
        s_max = std::max(s_max, est.value);
        out << i << "," << actkrr::format_spec(specs[i]) << ","
            << actkrr::format_double(est.value) << "," << est.gridsize << "\n";
      }
      const double alpha = std::max(cfg.budget.c_alpha * s_max, 1.1224620483093730);
      out << "# s_max=" << actkrr::format_double(s_max) << " alpha="
          << actkrr::format_double(alpha) << " n="
          << actkrr::sample_budget(std::max(s_max, 1.0),
                                   static_cast<long>(specs.size()),
                                   cfg.scenario.delta, cfg.budget.C0)
          << "\n";
    } else if (validate->parsed()) {
      auto& out = open_out(file, out_path);
      return actkrr::run_validate(out, jobs);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
