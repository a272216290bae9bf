#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "nf3/cli.hpp"

namespace {

struct RawFlags {
  std::string problem;
  std::string methods;
  double omega = 0.0;
  std::string omega_list;
  double h = 0.0;
  std::string h_list;
  int grid_points = 0;
  double t_final = 0.0;
  double epsilon = 0.3;
  std::string out = "-";
  int jobs = 1;
};

void add_common_flags(CLI::App& cmd, RawFlags& raw, bool omega_as_list,
                      bool h_as_list) {
  // the default help short flag -h would collide with the --h step flag
  cmd.set_help_flag("--help", "Print usage");
  cmd.add_option("--problem", raw.problem, "Problem: 1..4 or scalar")->required();
  cmd.add_option("--method", raw.methods,
                 "Comma-separated methods: nf3, nf3-resonance, m2, m4")
      ->required();

  auto* omega = cmd.add_option("--omega", raw.omega, "Oscillation frequency");
  auto* omega_list = cmd.add_option(
      "--omega-list", raw.omega_list,
      "Frequencies: comma-separated or geometric first:last:factor");
  omega->excludes(omega_list);
  omega_list->excludes(omega);
  if (omega_as_list)
    omega_list->required();
  else
    omega->required();

  auto* h = cmd.add_option("--h", raw.h, "Time step");
  auto* h_list = cmd.add_option(
      "--h-list", raw.h_list,
      "Time steps: comma-separated or geometric first:last:factor");
  h->excludes(h_list);
  h_list->excludes(h);
  if (h_as_list)
    h_list->required();
  else
    h->required();

  cmd.add_option("--grid-points", raw.grid_points,
                 "Spatial grid points (default: 100 in 1D, 20 in 2D)");
  cmd.add_option("--t-final", raw.t_final, "Final time (default 1)");
  cmd.add_option("--epsilon", raw.epsilon,
                 "Scalar problem mode amplitude (default 0.3)");
  cmd.add_option("--out", raw.out, "Output CSV path, '-' for stdout (default)");
  cmd.add_option("--jobs", raw.jobs, "Parallel sweep points (default 1)");
}

nf3::RunConfig to_config(const RawFlags& raw, nf3::RunConfig::Command command) {
  nf3::RunConfig cfg;
  cfg.command = command;
  cfg.problem = raw.problem;
  {
    // split methods on commas
    std::string token;
    for (char c : raw.methods + ",") {
      if (c == ',') {
        if (!token.empty()) cfg.methods.push_back(token);
        token.clear();
      } else if (c != ' ') {
        token += c;
      }
    }
  }
  cfg.omegas = raw.omega_list.empty() ? std::vector<double>{raw.omega}
                                      : nf3::parse_value_list(raw.omega_list);
  cfg.hs = raw.h_list.empty() ? std::vector<double>{raw.h}
                              : nf3::parse_value_list(raw.h_list);
  cfg.grid_points = raw.grid_points;
  cfg.t_final = raw.t_final;
  cfg.epsilon = raw.epsilon;
  cfg.out = raw.out;
  cfg.jobs = raw.jobs;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NF3: third-order integrator for highly oscillatory linear PDEs"};
  app.set_help_flag("--help", "Print usage");
  app.require_subcommand(1);

  RawFlags raw;
  auto* solve = app.add_subcommand("solve", "Single integration, one CSV row");
  add_common_flags(*solve, raw, false, false);
  auto* sweep_h =
      app.add_subcommand("sweep-h", "Error vs step size at fixed frequency");
  add_common_flags(*sweep_h, raw, false, true);
  auto* sweep_omega =
      app.add_subcommand("sweep-omega", "Error vs frequency at fixed step");
  add_common_flags(*sweep_omega, raw, true, false);
  auto* compare =
      app.add_subcommand("compare", "Several methods on one configuration");
  add_common_flags(*compare, raw, false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // help text to stdout, exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);      // usage text to the diagnostic stream
    return 2;         // all config problems share one exit code
  }

  nf3::RunConfig::Command command = nf3::RunConfig::Command::Solve;
  if (sweep_h->parsed()) command = nf3::RunConfig::Command::SweepH;
  if (sweep_omega->parsed()) command = nf3::RunConfig::Command::SweepOmega;
  if (compare->parsed()) command = nf3::RunConfig::Command::Compare;

  try {
    return nf3::run(to_config(raw, command));
  } catch (const nf3::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const nf3::NonFiniteState& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
