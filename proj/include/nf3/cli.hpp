#pragma once

#include <string>
#include <vector>

#include "nf3/stepper.hpp"

namespace nf3 {

/// Config error distinct from numeric failure: maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parsed command-line request; fully determines the run (no hidden state).
struct RunConfig {
  enum class Command { Solve, SweepH, SweepOmega, Compare };

  Command command = Command::Solve;
  std::string problem;             // "1".."4" or "scalar"
  std::vector<std::string> methods;
  std::vector<double> omegas;
  std::vector<double> hs;
  int grid_points = 0;             // 0: per-problem default (100 in 1D, 20 in 2D)
  double t_final = 0.0;            // 0: problem default (t* = 1)
  double epsilon = 0.3;            // scalar problem mode amplitude
  std::string out = "-";           // "-": standard output
  int jobs = 1;
};

/// One evaluated sweep point, in CSV column order.
struct ResultRow {
  std::string problem;
  std::string method;
  double omega = 0.0;
  double h = 0.0;
  int grid_points = 0;
  double t_final = 0.0;
  double l2_error = 0.0;
  double wall_seconds = 0.0;
};

/// Expands "a,b,c" or geometric "first:last:factor" (inclusive) lists.
std::vector<double> parse_value_list(const std::string& text);

Method method_from_name(const std::string& name);
const std::string& method_name(Method m);

/// Throws ConfigError on any inconsistent or incomplete request.
void validate(const RunConfig& cfg);

/// Evaluates every sweep point of the request (parallel up to cfg.jobs) and
/// returns rows in deterministic order: method, then ω ascending, then h
/// descending. Throws NonFiniteState if any integration blows up.
std::vector<ResultRow> evaluate(const RunConfig& cfg);

/// Header plus one line per row, numbers at 17 significant digits.
std::string format_csv(const std::vector<ResultRow>& rows);

/// validate + evaluate + write to cfg.out ("-" = stdout). Returns exit code 0;
/// failures are reported by exception (ConfigError, NonFiniteState).
int run(const RunConfig& cfg);

}  // namespace nf3
