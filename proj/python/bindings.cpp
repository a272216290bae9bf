// Python bindings: the benchmark drivers, the scalar closed-form oracle, and
// the closed-form oscillatory moments, with numpy-friendly signatures.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "nf3/cli.hpp"
#include "nf3/moments.hpp"
#include "nf3/problems.hpp"
#include "nf3/reference.hpp"
#include "nf3/stepper.hpp"

namespace py = pybind11;
using namespace nf3;

namespace {

ExampleCase make_case(int benchmark, double omega, int grid) {
  if (benchmark < 1 || benchmark > 4)
    throw std::invalid_argument("benchmark must be 1..4");
  if (grid != 0 && grid < 4)
    throw std::invalid_argument(
        "grid must be 0 (per-benchmark default) or at least 4");
  const int M = grid > 0 ? grid : (benchmark == 2 ? 20 : 100);
  return example_problem(benchmark, omega, M);
}

Method make_method(const std::string& name, int benchmark) {
  const Method method = method_from_name(name);
  if (method == Method::Nf3Resonance && benchmark != 4)
    throw std::invalid_argument(
        "method 'nf3-resonance' is supported on benchmark 4 only");
  return method;
}

MonomialIndex mono_from(const std::vector<int>& e) {
  switch (e.size()) {
    case 1:
      if (e[0] < 0 || e[0] > 3)
        throw std::invalid_argument("univariate exponent must be in 0..3");
      return MonomialIndex::uni(e[0]);
    case 2:
      if (e[0] < 0 || e[0] > 1 || e[1] < 0 || e[1] > 1)
        throw std::invalid_argument("bivariate exponents must each be 0 or 1");
      return MonomialIndex::bi(e[0], e[1]);
    case 3:
      if (e[0] < 0 || e[1] < 0 || e[2] < 0 || e[0] + e[1] + e[2] > 1)
        throw std::invalid_argument(
            "trivariate exponents must be all zero or a single 1");
      return MonomialIndex::tri(e[0], e[1], e[2]);
    default:
      throw std::invalid_argument("exponents must have length 1, 2, or 3");
  }
}

FrequencyVector freq_from(const std::vector<long>& n) {
  switch (n.size()) {
    case 1:
      return FrequencyVector::uni(n[0]);
    case 2:
      return FrequencyVector::bi(n[0], n[1]);
    case 3:
      return FrequencyVector::tri(n[0], n[1], n[2]);
    default:
      throw std::invalid_argument("harmonics must have length 1, 2, or 3");
  }
}

MomentKey make_key(const std::vector<int>& e, const std::vector<long>& n,
                   double omega, double h) {
  if (e.size() != n.size())
    throw std::invalid_argument("exponents and harmonics must have equal length");
  if (!(h > 0.0)) throw std::invalid_argument("h must be positive");
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
  return MomentKey{mono_from(e), freq_from(n), omega, h};
}

double benchmark_error_impl(int benchmark, double omega, double h, int grid,
                            const std::string& method, double t_final) {
  ExampleCase ec = make_case(benchmark, omega, grid);
  if (t_final > 0.0) ec.problem.t_star = t_final;
  const Trajectory traj = integrate(ec.problem, h, make_method(method, benchmark));
  return error_l2(traj.final_state(), ec.exact, ec.problem.t_star);
}

py::tuple solve_benchmark_impl(int benchmark, double omega, double h, int grid,
                               const std::string& method, double t_final) {
  ExampleCase ec = make_case(benchmark, omega, grid);
  if (t_final > 0.0) ec.problem.t_star = t_final;
  const Trajectory traj = integrate(ec.problem, h, make_method(method, benchmark));
  const Eigen::Index steps = static_cast<Eigen::Index>(traj.times.size());
  const Eigen::Index dim = traj.states.front().values.size();
  Eigen::VectorXd times(steps);
  Eigen::MatrixXcd states(steps, dim);
  for (Eigen::Index i = 0; i < steps; ++i) {
    times(i) = traj.times[i];
    states.row(i) = traj.states[i].values;
  }
  return py::make_tuple(times, states);
}

Eigen::VectorXcd benchmark_exact_impl(int benchmark, double omega, double t,
                                      int grid) {
  return make_case(benchmark, omega, grid).exact.state(t);
}

py::tuple benchmark_grid_impl(int benchmark, double omega, int grid) {
  const GridSpec& g = make_case(benchmark, omega, grid).problem.op.grid;
  return py::make_tuple(g.nodes_x, g.nodes_y);
}

double scalar_error_impl(double a, double epsilon, double omega, double h,
                         const std::string& method, double t_final) {
  ExampleCase ec = scalar_problem(a, epsilon, omega);
  if (t_final > 0.0) ec.problem.t_star = t_final;
  const Trajectory traj = integrate(ec.problem, h, make_method(method, 0));
  return error_l2(traj.final_state(), ec.exact, ec.problem.t_star);
}

double scalar_one_step_error_impl(double a, double epsilon, double omega,
                                  double h) {
  const ExampleCase ec = scalar_problem(a, epsilon, omega);
  const StepPlan plan = make_step_plan(ec.problem, h, /*resonance=*/false);
  const StateVector u1 = nf3_step(ec.problem.initial, 0.0, plan, ec.problem);
  return error_l2(u1, ec.exact, h);
}

}  // namespace

PYBIND11_MODULE(_nf3, m) {
  m.doc() =
      "Third-order Filon time stepper for linear evolution equations with "
      "highly oscillatory potentials: benchmark drivers, a scalar closed-form "
      "oracle, and the closed-form oscillatory moments the scheme contracts "
      "against.";
  m.attr("__version__") = "0.1.0";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const NonFiniteState& e) {
      PyErr_SetString(PyExc_FloatingPointError, e.what());
    }
  });

  m.def("benchmark_error", &benchmark_error_impl, py::arg("benchmark"),
        py::arg("omega"), py::arg("h"), py::arg("grid") = 0,
        py::arg("method") = "nf3", py::arg("t_final") = 0.0,
        "Discrete L2 error at the final time of one benchmark run.\n\n"
        "benchmark: 1 = 1D heat (Fourier), 2 = 2D heat (Chebyshev-Dirichlet),\n"
        "3 = wave with nonresonant modes, 4 = wave with resonant +/- mode "
        "pairs.\ngrid: collocation points per dimension; 0 picks the "
        "per-benchmark default\n(20 for benchmark 2, 100 otherwise).\n"
        "method: 'nf3', 'nf3-resonance' (benchmark 4 only), 'm2', or 'm4'.\n"
        "t_final: integration horizon; 0 keeps the benchmark's default of "
        "1.0.");
  m.def("solve_benchmark", &solve_benchmark_impl, py::arg("benchmark"),
        py::arg("omega"), py::arg("h"), py::arg("grid") = 0,
        py::arg("method") = "nf3", py::arg("t_final") = 0.0,
        "Run one benchmark and return (times, states): times has one entry "
        "per\nstored step and states row i is the state vector at times[i] "
        "(wave\nbenchmarks stack (u, du/dt); the 2D benchmark flattens "
        "x-major).");
  m.def("benchmark_exact", &benchmark_exact_impl, py::arg("benchmark"),
        py::arg("omega"), py::arg("t"), py::arg("grid") = 0,
        "Analytic solution of a benchmark sampled on its grid at time t, in "
        "the\nsame layout as solve_benchmark states.");
  m.def("benchmark_grid", &benchmark_grid_impl, py::arg("benchmark"),
        py::arg("omega"), py::arg("grid") = 0,
        "Physical collocation nodes (nodes_x, nodes_y) of a benchmark's grid;"
        "\nnodes_y is empty for one-dimensional benchmarks.");
  m.def("scalar_error", &scalar_error_impl, py::arg("a"), py::arg("epsilon"),
        py::arg("omega"), py::arg("h"), py::arg("method") = "nf3",
        py::arg("t_final") = 0.0,
        "Error at the final time for the scalar test equation\n"
        "u' = a*u + epsilon*exp(i*omega*t)*u, whose solution is an exact "
        "closed form.");
  m.def("scalar_one_step_error", &scalar_one_step_error_impl, py::arg("a"),
        py::arg("epsilon"), py::arg("omega"), py::arg("h"),
        "Error of a single step of the third-order scheme on the scalar test "
        "equation.");
  m.def("closed_moment",
        [](const std::vector<int>& e, const std::vector<long>& n, double omega,
           double h) { return moment(make_key(e, n, omega, h)); },
        py::arg("exponents"), py::arg("harmonics"), py::arg("omega"),
        py::arg("h"),
        "Closed-form oscillatory moment: the integral over the ordered "
        "simplex\nin [0, h]^d of prod_l tau_l^e_l * exp(i*omega*n_l*tau_l), "
        "where d is\nlen(exponents) (1, 2, or 3).  Exponents are limited to "
        "the shapes the\nstepper contracts: cubic in one variable, affine "
        "with cross term in two,\naffine in three.");
  m.def("quadrature_moment",
        [](const std::vector<int>& e, const std::vector<long>& n, double omega,
           double h, int nodes) {
          if (nodes < 4) throw std::invalid_argument("nodes must be at least 4");
          return oracle_moment(make_key(e, n, omega, h), nodes);
        },
        py::arg("exponents"), py::arg("harmonics"), py::arg("omega"),
        py::arg("h"), py::arg("nodes") = 96,
        "Gauss-Legendre reference value of the same oscillatory moment as\n"
        "closed_moment, for cross-checking the closed forms.");
  m.def("resonant_pair_moment",
        [](const std::vector<int>& e, long harmonic, double omega, double h) {
          if (e.size() != 2)
            throw std::invalid_argument("exponents must have length 2");
          if (harmonic == 0)
            throw std::invalid_argument("harmonic must be nonzero");
          if (!(h > 0.0)) throw std::invalid_argument("h must be positive");
          if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
          return mu2_resonant_pair(mono_from(e), harmonic, omega, h);
        },
        py::arg("exponents"), py::arg("harmonic"), py::arg("omega"),
        py::arg("h"),
        "Sum of the two opposite-harmonic bivariate moments (n, -n) and "
        "(-n, n)\nused by the resonant-pair correction.");
}
