#include "nf3/stepper.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <random>

#include "doctest.h"
#include "nf3/problems.hpp"
#include "nf3/reference.hpp"

using namespace nf3;
using cplx = std::complex<double>;

namespace {

Eigen::VectorXcd random_vec(std::mt19937_64& rng, int n, double scale) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = scale * cplx(g(rng), g(rng));
  return v;
}

Eigen::MatrixXcd random_mat(std::mt19937_64& rng, int n, double scale) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = scale * cplx(g(rng), g(rng));
  return m;
}

// 1x1 problem with genuinely time-dependent mode envelopes, so the cubic and
// affine interpolants carry a measurable (but convergent) error.
Problem scalar_timedep_problem(double omega) {
  Problem prob;
  prob.op.matrix = Eigen::MatrixXcd::Constant(1, 1, cplx(-0.8, 0.0));
  prob.op.grid = point_grid();
  prob.op.order = 0;
  prob.op.lifted = false;
  prob.potential.omega = omega;
  prob.potential.symmetric = false;
  Mode m1;
  m1.n = 1;
  m1.alpha = [](double t) {
    return Eigen::VectorXcd::Constant(1, 0.3 * (std::cos(2 * t) + 0.5 * std::sin(t)))
        .eval();
  };
  m1.dalpha = [](double t) {
    return Eigen::VectorXcd::Constant(1, 0.3 * (-2 * std::sin(2 * t) + 0.5 * std::cos(t)))
        .eval();
  };
  Mode m2;
  m2.n = -2;
  m2.alpha = [](double t) {
    return Eigen::VectorXcd::Constant(1, 0.2 * std::exp(-t) * cplx(1.0, 0.5)).eval();
  };
  m2.dalpha = [](double t) {
    return Eigen::VectorXcd::Constant(1, -0.2 * std::exp(-t) * cplx(1.0, 0.5)).eval();
  };
  prob.potential.modes = {m1, m2};
  prob.initial =
      StateVector{Eigen::VectorXcd::Constant(1, cplx(0.7, -0.2)), prob.op.grid, false};
  return prob;
}

// Dense 4x4 problem where the multipliers do not commute with the operator,
// so the commutator parts of the derivative samples are exercised.
Problem matrix_problem(double omega) {
  std::mt19937_64 rng(7);
  Problem prob;
  prob.op.matrix = random_mat(rng, 4, 0.3);
  prob.op.grid = fourier_grid(4, 0.0, 1.0);
  prob.op.order = 0;
  prob.op.lifted = false;
  prob.potential.omega = omega;
  prob.potential.symmetric = false;
  const Eigen::VectorXcd p1 = random_vec(rng, 4, 0.4), q1 = random_vec(rng, 4, 0.3);
  const Eigen::VectorXcd p2 = random_vec(rng, 4, 0.3), q2 = random_vec(rng, 4, 0.2);
  Mode m1;
  m1.n = 1;
  m1.alpha = [p1, q1](double t) { return (p1 + std::cos(t) * q1).eval(); };
  m1.dalpha = [q1](double t) { return (-std::sin(t) * q1).eval(); };
  Mode m2;
  m2.n = -2;
  m2.alpha = [p2, q2](double t) { return (p2 + t * q2).eval(); };
  m2.dalpha = [p2, q2](double) { return q2; };
  prob.potential.modes = {m1, m2};
  prob.initial = StateVector{random_vec(rng, 4, 1.0), prob.op.grid, false};
  return prob;
}

double bruteforce_gap(const Problem& prob, double t0, double h) {
  const auto plan = make_step_plan(prob, h, false);
  const auto v = nf3_step(prob.initial, t0, plan, prob);
  const auto bf = neumann_bruteforce(prob, t0, h, 3, 32);
  return (v.values - bf).norm();
}

}  // namespace

TEST_CASE("empty mode list reduces every method to the bare propagator") {
  auto ec = scalar_problem(-0.7, 0.0, 30.0);
  ec.problem.potential.modes.clear();
  ec.problem.potential.symmetric = true;  // resonance variant needs the flag
  const double h = 0.4;
  const cplx want = std::exp(cplx(-0.7, 0.0) * h) * ec.problem.initial.values(0);

  const auto plan = make_step_plan(ec.problem, h, false);
  CHECK(std::abs(nf3_step(ec.problem.initial, 0.0, plan, ec.problem).values(0) - want) <=
        1e-13);

  const auto plan_r = make_step_plan(ec.problem, h, true);
  CHECK(std::abs(nf3_resonance_step(ec.problem.initial, 0.0, plan_r, ec.problem).values(0) -
                 want) <= 1e-13);

  CHECK(std::abs(m2_step(ec.problem.initial, 0.0, h, ec.problem).values(0) - want) <=
        1e-13);
  CHECK(std::abs(m4_step(ec.problem.initial, 0.0, h, ec.problem).values(0) - want) <=
        1e-13);
}

TEST_CASE("steps are linear in the state") {
  const auto prob = matrix_problem(25.0);
  std::mt19937_64 rng(91);
  const Eigen::VectorXcd x = random_vec(rng, 4, 1.0);
  const Eigen::VectorXcd y = random_vec(rng, 4, 1.0);
  const cplx c1(0.8, -1.3), c2(-0.4, 0.6);
  const StateVector ux{x, prob.op.grid, false};
  const StateVector uy{y, prob.op.grid, false};
  const StateVector uz{c1 * x + c2 * y, prob.op.grid, false};
  const double t = 0.3, h = 0.25;

  const auto plan = make_step_plan(prob, h, false);
  const Eigen::VectorXcd combo = nf3_step(uz, t, plan, prob).values;
  const Eigen::VectorXcd split =
      c1 * nf3_step(ux, t, plan, prob).values + c2 * nf3_step(uy, t, plan, prob).values;
  CHECK((combo - split).norm() <= 1e-12 * combo.norm());

  CHECK((m2_step(uz, t, h, prob).values -
         (c1 * m2_step(ux, t, h, prob).values + c2 * m2_step(uy, t, h, prob).values))
            .norm() <= 1e-12 * combo.norm());
  CHECK((m4_step(uz, t, h, prob).values -
         (c1 * m4_step(ux, t, h, prob).values + c2 * m4_step(uy, t, h, prob).values))
            .norm() <= 1e-12 * combo.norm());

  // resonance flavour, on a symmetric problem with a genuine +-n pair
  Problem sym = prob;
  sym.potential.symmetric = true;
  Mode plus = sym.potential.modes[0];
  Mode minus = plus;
  minus.n = -plus.n;
  sym.potential.modes = {plus, minus};
  const auto plan_r = make_step_plan(sym, h, true);
  const Eigen::VectorXcd combo_r = nf3_resonance_step(uz, t, plan_r, sym).values;
  const Eigen::VectorXcd split_r = c1 * nf3_resonance_step(ux, t, plan_r, sym).values +
                                   c2 * nf3_resonance_step(uy, t, plan_r, sym).values;
  CHECK((combo_r - split_r).norm() <= 1e-12 * combo_r.norm());
}

TEST_CASE("one-step operator is periodic in the window start") {
  const auto ec = scalar_problem(-1.0, 0.3, 7.0);
  const double h = 0.3;
  const auto plan = make_step_plan(ec.problem, h, false);
  const double period = 2.0 * M_PI / 7.0;
  const auto base = nf3_step(ec.problem.initial, 0.3, plan, ec.problem).values;
  for (int k = 1; k <= 2; ++k) {
    const auto shifted =
        nf3_step(ec.problem.initial, 0.3 + k * period, plan, ec.problem).values;
    CHECK((shifted - base).norm() <= 1e-12 * base.norm());
  }
}

TEST_CASE("scalar benchmark: one-step accuracy and local order") {
  {
    const auto ec = scalar_problem(-1.0, 0.3, 200.0);
    const auto plan = make_step_plan(ec.problem, 0.1, false);
    const auto v = nf3_step(ec.problem.initial, 0.0, plan, ec.problem);
    CHECK(std::abs(v.values(0) - ec.exact.state(0.1)(0)) <= 1e-6);
  }
  {
    const auto ec = scalar_problem(-1.0, 0.3, 10.0);
    auto one_step_err = [&](double h) {
      const auto plan = make_step_plan(ec.problem, h, false);
      const auto v = nf3_step(ec.problem.initial, 0.0, plan, ec.problem);
      return std::abs(v.values(0) - ec.exact.state(h)(0));
    };
    for (double h : {0.1, 0.05}) {
      const double ratio = one_step_err(h) / one_step_err(h / 2);
      CHECK(ratio >= 12.0);
      CHECK(ratio <= 20.0);
    }
  }
}

TEST_CASE("truncated-series oracle basics") {
  const auto ec = scalar_problem(-1.0, 0.3, 50.0);

  SUBCASE("depth zero is the bare propagator") {
    const auto bf0 = neumann_bruteforce(ec.problem, 0.0, 0.25, 0, 32);
    const auto e = matrix_exp(ec.problem.op, 0.25);
    CHECK((bf0 - e.matrix * ec.problem.initial.values).norm() <= 1e-14);
  }

  SUBCASE("constant envelopes make the interpolation exact") {
    // With constant mode envelopes on a 1x1 operator every kernel is constant
    // in the time variables, so the scheme must reproduce the depth-3
    // truncated series to quadrature precision.
    const auto plan = make_step_plan(ec.problem, 0.25, false);
    const auto v = nf3_step(ec.problem.initial, 0.0, plan, ec.problem);
    const auto bf = neumann_bruteforce(ec.problem, 0.0, 0.25, 3, 32);
    CHECK((v.values - bf).norm() <= 1e-10);
  }

  SUBCASE("size and parameter guards") {
    const auto big = example_problem(1, 100.0, 8);  // state length 8 > 4
    CHECK_THROWS_AS(neumann_bruteforce(big.problem, 0.0, 0.1, 2, 16),
                    std::invalid_argument);
    CHECK_THROWS_AS(neumann_bruteforce(ec.problem, 0.0, 0.25, 5, 32),
                    std::invalid_argument);
    CHECK_THROWS_AS(neumann_bruteforce(ec.problem, 0.0, 0.25, 3, 2),
                    std::invalid_argument);
    auto stiff = scalar_problem(-1.0e4, 0.3, 50.0);
    CHECK_THROWS_AS(neumann_bruteforce(stiff.problem, 0.0, 0.25, 3, 32),
                    std::invalid_argument);
  }
}

TEST_CASE("scheme matches the truncated series to interpolation accuracy") {
  // In the regime omega*h <= 2 the scheme's deviation from the depth-3
  // truncated series is pure interpolation error and must shrink like a
  // fourth-order term under step halving.
  {
    const auto prob = scalar_timedep_problem(10.0);
    const double g1 = bruteforce_gap(prob, 0.1, 0.2);
    const double g2 = bruteforce_gap(prob, 0.1, 0.1);
    CHECK(g1 <= 1e-4);
    CHECK(g1 / g2 >= 8.0);
  }
  {
    const auto prob = matrix_problem(10.0);
    const double g1 = bruteforce_gap(prob, 0.2, 0.1);
    const double g2 = bruteforce_gap(prob, 0.2, 0.05);
    CHECK(g1 <= 1e-4);
    CHECK(g1 / g2 >= 8.0);
  }
}

TEST_CASE("resonance branch") {
  SUBCASE("no resonant pair: identical to the plain step") {
    auto ec = scalar_problem(-0.5, 0.25, 30.0);
    ec.problem.potential.symmetric = true;  // single mode n=+1, no partner
    const auto plan_p = make_step_plan(ec.problem, 0.3, false);
    const auto plan_r = make_step_plan(ec.problem, 0.3, true);
    const auto a = nf3_step(ec.problem.initial, 0.4, plan_p, ec.problem);
    const auto b = nf3_resonance_step(ec.problem.initial, 0.4, plan_r, ec.problem);
    CHECK((a.values - b.values).norm() <= 1e-13 * a.values.norm());
  }

  SUBCASE("rejects problems without the symmetry guarantee") {
    const auto ec = scalar_problem(-0.5, 0.25, 30.0);  // symmetric = false
    CHECK_THROWS_AS(make_step_plan(ec.problem, 0.3, true), std::invalid_argument);
    auto sym = ec;
    sym.problem.potential.symmetric = true;
    const auto plan = make_step_plan(sym.problem, 0.3, true);
    CHECK_THROWS_AS(nf3_resonance_step(ec.problem.initial, 0.0, plan, ec.problem),
                    std::invalid_argument);
  }

  SUBCASE("beats the plain step on the resonant wave benchmark") {
    const auto ec = example_problem(4, 100.0, 32);
    const auto res = integrate(ec.problem, 0.25, Method::Nf3Resonance);
    const auto plain = integrate(ec.problem, 0.25, Method::Nf3);
    const double err_res = error_l2(res.final_state(), ec.exact, 1.0);
    const double err_plain = error_l2(plain.final_state(), ec.exact, 1.0);
    CHECK(err_res <= err_plain);
    CHECK(err_res <= 1e-4);
  }
}

TEST_CASE("integration horizon handling") {
  auto ec = scalar_problem(-0.9, 0.0, 10.0);

  SUBCASE("final partial step gets its own propagator") {
    const auto traj = integrate(ec.problem, 0.3, Method::Nf3);
    REQUIRE(traj.times.size() == 5);
    CHECK(traj.times[0] == 0.0);
    CHECK(traj.times[1] == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(traj.times[3] == doctest::Approx(0.9).epsilon(1e-15));
    CHECK(traj.times[4] == 1.0);
    const cplx want = std::exp(cplx(-0.9, 0.0)) * ec.problem.initial.values(0);
    CHECK(std::abs(traj.final_state().values(0) - want) <= 1e-12);
  }

  SUBCASE("exact division leaves no extra node") {
    const auto traj = integrate(ec.problem, 0.25, Method::Nf3);
    REQUIRE(traj.times.size() == 5);
    CHECK(traj.times.back() == 1.0);
  }

  SUBCASE("invalid steps are rejected") {
    CHECK_THROWS_AS(integrate(ec.problem, 0.0, Method::Nf3), std::invalid_argument);
    CHECK_THROWS_AS(integrate(ec.problem, -0.1, Method::M2), std::invalid_argument);
  }
}

TEST_CASE("non-finite states raise a dedicated error") {
  auto prob = scalar_timedep_problem(20.0);
  Mode bad;
  bad.n = 1;
  bad.alpha = [](double t) {
    const double v = t > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0;
    return Eigen::VectorXcd::Constant(1, cplx(v, 0.0)).eval();
  };
  bad.dalpha = [](double) { return Eigen::VectorXcd::Zero(1).eval(); };
  prob.potential.modes = {bad};
  CHECK_THROWS_AS(integrate(prob, 0.4, Method::Nf3), NonFiniteState);
}

TEST_CASE("catalog problems integrate accurately") {
  {
    const auto ec = example_problem(1, 200.0, 24);
    const auto traj = integrate(ec.problem, 0.125, Method::Nf3);
    CHECK(error_l2(traj.final_state(), ec.exact, 1.0) <= 1e-5);
  }
  {
    const auto ec = example_problem(3, 100.0, 32);
    const auto traj = integrate(ec.problem, 0.5, Method::Nf3);
    CHECK(error_l2(traj.final_state(), ec.exact, 1.0) <= 1e-4);
  }
}
