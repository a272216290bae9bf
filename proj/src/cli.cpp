#include "nf3/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include "nf3/problems.hpp"
#include "nf3/reference.hpp"

namespace nf3 {

namespace {

struct SweepPoint {
  Method method;
  double omega;
  double h;
};

double parse_double(const std::string& token) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw ConfigError("not a number: '" + token + "'");
  return value;
}

std::string trimmed(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(trimmed(text.substr(start, pos - start)));
    if (pos == std::string::npos) return parts;
    start = pos + 1;
  }
}

std::vector<double> expand_geometric(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3)
    throw ConfigError("geometric range needs first:last:factor, got '" + text + "'");
  const double first = parse_double(parts[0]);
  const double last = parse_double(parts[1]);
  const double factor = parse_double(parts[2]);
  if (!(factor > 1.0))
    throw ConfigError("geometric range factor must be > 1, got '" + parts[2] + "'");
  if (!(first > 0.0) || !(last > 0.0))
    throw ConfigError("geometric range endpoints must be positive in '" + text + "'");

  std::vector<double> values;
  const bool descending = first > last;
  double x = first;
  // Inclusive endpoint, tolerant of the rounding accumulated by repeated
  // multiplication.
  const double stop = descending ? last * (1.0 - 1e-9) : last * (1.0 + 1e-9);
  while (descending ? x >= stop : x <= stop) {
    values.push_back(x);
    if (values.size() > 10000)
      throw ConfigError("geometric range '" + text + "' expands to too many values");
    x = descending ? x / factor : x * factor;
  }
  if (values.empty()) throw ConfigError("geometric range '" + text + "' is empty");
  return values;
}

int problem_id(const std::string& problem) {
  if (problem == "scalar") return 0;
  if (problem.size() == 1 && problem[0] >= '1' && problem[0] <= '4')
    return problem[0] - '0';
  throw ConfigError("unknown problem '" + problem + "' (expected 1..4 or scalar)");
}

std::string problem_label(int id) {
  return id == 0 ? "scalar" : "ex" + std::to_string(id);
}

int default_grid_points(int id) { return id == 2 ? 20 : 100; }

ResultRow execute_point(const RunConfig& cfg, int id, const SweepPoint& pt) {
  ExampleCase ec = id == 0 ? scalar_problem(-1.0, cfg.epsilon, pt.omega)
                           : example_problem(id, pt.omega,
                                             cfg.grid_points > 0
                                                 ? cfg.grid_points
                                                 : default_grid_points(id));
  if (cfg.t_final > 0.0) ec.problem.t_star = cfg.t_final;

  const auto start = std::chrono::steady_clock::now();
  const Trajectory traj = integrate(ec.problem, pt.h, pt.method);
  const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - start;

  ResultRow row;
  row.problem = problem_label(id);
  row.method = method_name(pt.method);
  row.omega = pt.omega;
  row.h = pt.h;
  row.grid_points = id == 0 ? 1 : (cfg.grid_points > 0 ? cfg.grid_points
                                                       : default_grid_points(id));
  row.t_final = ec.problem.t_star;
  row.l2_error = error_l2(traj.final_state(), ec.exact, ec.problem.t_star);
  row.wall_seconds = wall.count();
  return row;
}

std::vector<double> sorted_unique(std::vector<double> v, bool descending) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  if (descending) std::reverse(v.begin(), v.end());
  return v;
}

}  // namespace

std::vector<double> parse_value_list(const std::string& text) {
  if (text.find(':') != std::string::npos) return expand_geometric(text);
  std::vector<double> values;
  for (const std::string& token : split(text, ',')) {
    if (token.empty()) throw ConfigError("empty entry in list '" + text + "'");
    values.push_back(parse_double(token));
  }
  return values;
}

Method method_from_name(const std::string& name) {
  if (name == "nf3") return Method::Nf3;
  if (name == "nf3-resonance") return Method::Nf3Resonance;
  if (name == "m2") return Method::M2;
  if (name == "m4") return Method::M4;
  throw ConfigError("unknown method '" + name +
                    "' (expected nf3, nf3-resonance, m2, m4)");
}

const std::string& method_name(Method m) {
  static const std::string names[] = {"nf3", "nf3-resonance", "m2", "m4"};
  switch (m) {
    case Method::Nf3: return names[0];
    case Method::Nf3Resonance: return names[1];
    case Method::M2: return names[2];
    case Method::M4: return names[3];
  }
  throw std::logic_error("unreachable method name");
}

void validate(const RunConfig& cfg) {
  const int id = problem_id(cfg.problem);  // throws on unknown problem

  if (cfg.methods.empty()) throw ConfigError("no method given");
  for (const std::string& m : cfg.methods) {
    const Method method = method_from_name(m);  // throws on unknown method
    if (method == Method::Nf3Resonance && id != 4)
      throw ConfigError(
          "method nf3-resonance requires the symmetric potential of problem 4");
  }

  if (cfg.omegas.empty()) throw ConfigError("no omega given");
  for (double w : cfg.omegas)
    if (!(w > 0.0)) throw ConfigError("omega must be positive");
  if (cfg.hs.empty()) throw ConfigError("no step size given");
  for (double h : cfg.hs)
    if (!(h > 0.0)) throw ConfigError("step size must be positive");

  if (cfg.grid_points < 0 || cfg.grid_points == 1 || cfg.grid_points == 2 ||
      cfg.grid_points == 3)
    throw ConfigError("grid points must be 0 (default) or at least 4");
  if (cfg.t_final < 0.0) throw ConfigError("final time must be positive");
  if (cfg.jobs < 1) throw ConfigError("jobs must be at least 1");
  if (!std::isfinite(cfg.epsilon)) throw ConfigError("epsilon must be finite");

  switch (cfg.command) {
    case RunConfig::Command::Solve:
      if (cfg.methods.size() != 1 || cfg.omegas.size() != 1 || cfg.hs.size() != 1)
        throw ConfigError("solve takes exactly one method, one omega, one h");
      break;
    case RunConfig::Command::SweepH:
      if (cfg.omegas.size() != 1)
        throw ConfigError("sweep-h takes exactly one omega");
      break;
    case RunConfig::Command::SweepOmega:
      if (cfg.hs.size() != 1)
        throw ConfigError("sweep-omega takes exactly one h");
      break;
    case RunConfig::Command::Compare:
      if (cfg.methods.size() < 2)
        throw ConfigError("compare needs at least two methods");
      if (cfg.omegas.size() != 1 || cfg.hs.size() != 1)
        throw ConfigError("compare takes exactly one omega and one h");
      break;
  }
}

std::vector<ResultRow> evaluate(const RunConfig& cfg) {
  const int id = problem_id(cfg.problem);

  std::vector<std::string> names = cfg.methods;
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  const std::vector<double> omegas = sorted_unique(cfg.omegas, /*descending=*/false);
  const std::vector<double> hs = sorted_unique(cfg.hs, /*descending=*/true);

  std::vector<SweepPoint> points;
  for (const std::string& name : names)
    for (double w : omegas)
      for (double h : hs) points.push_back({method_from_name(name), w, h});

  std::vector<ResultRow> rows(points.size());
  std::vector<std::exception_ptr> errors(points.size());

  const int workers =
      std::max(1, std::min<int>(cfg.jobs, static_cast<int>(points.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < points.size(); ++i)
      rows[i] = execute_point(cfg, id, points[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= points.size()) return;
          try {
            rows[i] = execute_point(cfg, id, points[i]);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errors)
      if (e) std::rethrow_exception(e);
  }
  return rows;
}

std::string format_csv(const std::vector<ResultRow>& rows) {
  std::string out = "problem,method,omega,h,M,t_final,l2_error,wall_seconds\n";
  char buf[256];
  for (const ResultRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%s,%s,%.17g,%.17g,%d,%.17g,%.17g,%.17g\n",
                  r.problem.c_str(), r.method.c_str(), r.omega, r.h,
                  r.grid_points, r.t_final, r.l2_error, r.wall_seconds);
    out += buf;
  }
  return out;
}

int run(const RunConfig& cfg) {
  validate(cfg);
  const std::string csv = format_csv(evaluate(cfg));
  if (cfg.out == "-") {
    std::fwrite(csv.data(), 1, csv.size(), stdout);
    std::fflush(stdout);
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) throw ConfigError("cannot open output file '" + cfg.out + "'");
    file << csv;
    if (!file.good())
      throw ConfigError("failed writing output file '" + cfg.out + "'");
  }
  return 0;
}

}  // namespace nf3
