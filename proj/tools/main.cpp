#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "lohe/checks.hpp"
#include "lohe/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Lohe tensor flows, characteristic-symbol fusion, and check suites"};
  app.set_help_flag("--help", "print this help message");  // frees -h for the step flag

  std::string config_path;
  lohe::CliOverrides overrides;
  std::string out, suite;
  std::uint64_t seed = 0;
  double h = 0.0, t_end = 0.0;
  bool list_suites = false;

  app.add_option("--config", config_path, "experiment config (JSON)");
  auto* out_opt = app.add_option("--out", out, "output directory");
  auto* seed_opt = app.add_option("--seed", seed, "random seed override");
  auto* h_opt = app.add_option("--h", h, "integrator step override");
  auto* t_opt = app.add_option("--t-end", t_end, "end time override");
  auto* suite_opt = app.add_option("--suite", suite, "check suite name (implies check mode)");
  app.add_flag("--renormalize", overrides.renormalize, "rescale states to unit norm after each step");
  app.add_flag("--list-suites", list_suites, "print the known check suites and exit");

  CLI11_PARSE(app, argc, argv);

  if (list_suites) {
    for (const auto& name : lohe::suite_names()) std::cout << name << "\n";
    return 0;
  }

  if (out_opt->count() > 0) overrides.out = out;
  if (seed_opt->count() > 0) overrides.seed = seed;
  if (h_opt->count() > 0) overrides.h = h;
  if (t_opt->count() > 0) overrides.t_end = t_end;
  if (suite_opt->count() > 0) overrides.suite = suite;

  if (config_path.empty() && overrides.suite) {
    // allow `lohe --suite NAME` without a config file
    const auto tmp = std::filesystem::temp_directory_path() / "lohe_check_config.json";
    std::ofstream(tmp) << "{\"mode\": \"check\"}\n";
    config_path = tmp.string();
  }
  if (config_path.empty()) {
    std::cerr << "config error: --config (or --suite) is required\n";
    return 2;
  }
  return lohe::run_config(config_path, overrides, std::cout);
}
