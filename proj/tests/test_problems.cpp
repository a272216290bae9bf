#include "nf3/problems.hpp"

#include <cmath>
#include <complex>

#include "doctest.h"

using namespace nf3;
using cplx = std::complex<double>;

namespace {
constexpr cplx kI{0.0, 1.0};

double max_abs(const Eigen::VectorXcd& v) { return v.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("initial data matches the analytic solution at t = 0") {
  for (int id : {1, 3, 4}) {
    const auto ec = example_problem(id, 50.0, 64);
    CAPTURE(id);
    CHECK(max_abs(ec.exact.state(0.0) - ec.problem.initial.values) <= 1e-12);
  }
  const auto ec2 = example_problem(2, 50.0, 12);
  CHECK(max_abs(ec2.exact.state(0.0) - ec2.problem.initial.values) <= 1e-12);
  const auto sc = scalar_problem(-1.0, 0.3, 40.0);
  CHECK(max_abs(sc.exact.state(0.0) - sc.problem.initial.values) <= 1e-14);
}

TEST_CASE("example 1: mode structure") {
  const double w = 120.0;
  const auto ec = example_problem(1, w, 32);
  const auto& modes = ec.problem.potential.modes;
  REQUIRE(modes.size() == 2);
  CHECK(modes[0].n == 1);
  CHECK(modes[1].n == 2);
  // d/dt of the degree-1-in-t mode is constant; check consistency of the
  // samplers by finite differences.
  const double t = 0.37, d = 1e-6;
  for (const auto& m : modes) {
    const Eigen::VectorXcd fd = (m.alpha(t + d) - m.alpha(t - d)) / (2.0 * d);
    CHECK(max_abs(fd - m.dalpha(t)) <= 1e-8);
  }
  // n = 2 mode vanishes at t = 0 (t² prefactor).
  CHECK(max_abs(modes[1].alpha(0.0)) == 0.0);
}

TEST_CASE("example 3: initial velocity is -(i x^2 / omega) u0") {
  const double w = 75.0;
  const int M = 48;
  const auto ec = example_problem(3, w, M);
  const auto& x = ec.problem.op.grid.nodes_x;
  const auto& init = ec.problem.initial.values;
  REQUIRE(init.size() == 2 * M);
  for (int j = 0; j < M; ++j) {
    const cplx want = -kI * x[j] * x[j] / w * init[j];
    CHECK(std::abs(init[M + j] - want) <= 1e-14);
  }
  CHECK(ec.problem.kind == ProblemKind::WaveLifted);
  CHECK(!ec.problem.potential.symmetric);
}

TEST_CASE("example 4: mode decomposition re-sums to the stated potential") {
  const double w = 35.0;
  const int M = 40;
  const auto ec = example_problem(4, w, M);
  CHECK(ec.problem.potential.symmetric);
  REQUIRE(ec.problem.potential.modes.size() == 4);

  const auto& x = ec.problem.op.grid.nodes_x;
  const double w2 = w * w;
  for (double t : {0.0, 0.21, 0.73, 1.0}) {
    // Static part (folded into the operator) + oscillatory sum.
    const Eigen::VectorXcd osc = oscillatory_sum(ec.problem.potential, t);
    for (int j = 0; j < M; ++j) {
      const double xx = x[j] * x[j];
      const double stat = 1.0 - xx - 2.0 * xx / (w2 * w2) + xx * xx / (2.0 * w2);
      const double c = std::cos(w * t), s = std::sin(w * t);
      const double f = 1.0 - xx + (2.0 + xx * w2 - 4.0 * xx) * c / w2 -
                       4.0 * xx * c * c / (w2 * w2) + xx * xx * s * s / w2;
      CHECK(std::abs(cplx(stat) + osc[j] - f) <= 1e-12 * std::max(1.0, std::abs(f)));
    }
  }

  // ± pairs share samplers.
  const auto& m = ec.problem.potential.modes;
  CHECK(m[0].n == 1);
  CHECK(m[1].n == -1);
  CHECK(max_abs(m[0].alpha(0.5) - m[1].alpha(0.5)) == 0.0);
  CHECK(m[2].n == 2);
  CHECK(m[3].n == -2);
  CHECK(max_abs(m[2].alpha(0.5) - m[3].alpha(0.5)) == 0.0);
}

TEST_CASE("scalar problem closed form") {
  const double a = -1.0, eps = 0.3, w = 25.0;
  const auto ec = scalar_problem(a, eps, w);
  // u(t) = exp(at + ε(e^{iωt}−1)/(iω)); spot-check the sampler.
  const double t = 0.8;
  const cplx want =
      std::exp(a * t + eps * (std::exp(kI * w * t) - 1.0) / (kI * w));
  CHECK(std::abs(ec.exact.state(t)(0) - want) <= 1e-15);
  CHECK(ec.problem.op.matrix(0, 0) == cplx(a));
  REQUIRE(ec.problem.potential.modes.size() == 1);
  CHECK(ec.problem.potential.modes[0].alpha(0.0)(0) == cplx(eps));
}

TEST_CASE("unknown example id is rejected") {
  CHECK_THROWS(example_problem(5, 10.0, 16));
  CHECK_THROWS(example_problem(0, 10.0, 16));
  CHECK_THROWS(example_problem(1, -1.0, 16));
}
