#include "nf3/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace nf3 {
namespace {

using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};

Eigen::VectorXcd sample1d(const Eigen::VectorXd& x,
                          const std::function<cplx(double)>& f) {
  Eigen::VectorXcd v(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) v[i] = f(x[i]);
  return v;
}

Eigen::VectorXcd sample2d(const GridSpec& g,
                          const std::function<cplx(double, double)>& f) {
  Eigen::VectorXcd v(g.state_length());
  for (int ix = 0; ix < g.mx; ++ix)
    for (int iy = 0; iy < g.my; ++iy)
      v[ix * g.my + iy] = f(g.nodes_x[ix], g.nodes_y[iy]);
  return v;
}

Mode constant_mode(long n, Eigen::VectorXcd values) {
  const Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(values.size());
  return Mode{n, [values](double) { return values; },
              [zero](double) { return zero; }};
}

// ------------------------- Example 1: heat, 1D -------------------------
//   ∂ₜu = ∂ₓₓu + f·u  on (0, 2π), periodic,
//   f(x,t) = 1 + (i − t(ω−3i))·cos(x)/ω · e^{iωt} + t²sin²(x)/ω² · e^{2iωt},
//   u(x,t) = exp(i·e^{iωt}·cos(x)·t/ω)·sin(x).
ExampleCase heat_1d(double omega, int M) {
  ExampleCase ec;
  EllipticOperator op = build_fourier_diff2(M, {0.0, 2.0 * M_PI});
  op.matrix += Eigen::MatrixXcd::Identity(M, M);  // static part: +1
  const Eigen::VectorXd x = op.grid.nodes_x;

  OscillatoryPotential pot;
  pot.omega = omega;
  const Eigen::VectorXcd cosx = sample1d(x, [](double t) { return cplx(std::cos(t)); });
  const Eigen::VectorXcd sin2x =
      sample1d(x, [](double t) { return cplx(std::sin(t) * std::sin(t)); });
  pot.modes.push_back(Mode{
      1,
      [cosx, omega](double t) -> Eigen::VectorXcd {
        return ((kI - t * cplx(omega, -3.0)) / omega) * cosx;
      },
      [cosx, omega](double) -> Eigen::VectorXcd {
        return (-cplx(omega, -3.0) / omega) * cosx;
      }});
  pot.modes.push_back(Mode{
      2,
      [sin2x, omega](double t) -> Eigen::VectorXcd {
        return (t * t / (omega * omega)) * sin2x;
      },
      [sin2x, omega](double t) -> Eigen::VectorXcd {
        return (2.0 * t / (omega * omega)) * sin2x;
      }});

  ec.problem.op = op;
  ec.problem.potential = std::move(pot);
  ec.problem.kind = ProblemKind::FirstOrder;
  ec.problem.t_star = 1.0;
  ec.problem.initial = StateVector{
      sample1d(x, [](double t) { return cplx(std::sin(t)); }), op.grid, false};

  ec.exact.grid = op.grid;
  ec.exact.lifted = false;
  Eigen::VectorXd xn = x;
  ec.exact.state = [xn, omega](double t) {
    Eigen::VectorXcd u(xn.size());
    for (Eigen::Index j = 0; j < xn.size(); ++j) {
      const cplx phase = kI * std::exp(kI * omega * t) * std::cos(xn[j]) * t / omega;
      u[j] = std::exp(phase) * std::sin(xn[j]);
    }
    return u;
  };
  return ec;
}

// ---------------------- Example 2: heat, 2D ----------------------------
//   ∂ₜu = Δu + f·u  on (−1,1)², homogeneous Dirichlet,
//   f = 2π² + (6π²+iω)cos(πx)cos(πy)/ω · e^{iωt}
//          + π²(−1+cos(2πx)cos(2πy))/(2ω²) · e^{2iωt},
//   u = sin(πx)sin(πy)·exp(e^{iωt}cos(πx)cos(πy)/ω).
ExampleCase heat_2d(double omega, int M) {
  ExampleCase ec;
  const EllipticOperator d2 = build_chebyshev_dirichlet(M, {-1.0, 1.0});
  EllipticOperator op = kron_sum(d2, d2);
  const int n = op.grid.state_length();
  op.matrix += (2.0 * M_PI * M_PI) * Eigen::MatrixXcd::Identity(n, n);
  const GridSpec g = op.grid;

  OscillatoryPotential pot;
  pot.omega = omega;
  pot.modes.push_back(constant_mode(
      1, sample2d(g, [omega](double x, double y) {
        return (cplx(6.0 * M_PI * M_PI, omega) / omega) *
               std::cos(M_PI * x) * std::cos(M_PI * y);
      })));
  pot.modes.push_back(constant_mode(
      2, sample2d(g, [omega](double x, double y) {
        return cplx(0.5 * M_PI * M_PI *
                    (-1.0 + std::cos(2.0 * M_PI * x) * std::cos(2.0 * M_PI * y)) /
                    (omega * omega));
      })));

  ec.problem.op = op;
  ec.problem.potential = std::move(pot);
  ec.problem.kind = ProblemKind::FirstOrder;
  ec.problem.t_star = 1.0;
  ec.problem.initial = StateVector{
      sample2d(g,
               [omega](double x, double y) {
                 return std::sin(M_PI * x) * std::sin(M_PI * y) *
                        std::exp(std::cos(M_PI * x) * std::cos(M_PI * y) / omega);
               }),
      g, false};

  ec.exact.grid = g;
  ec.exact.lifted = false;
  ec.exact.state = [g, omega](double t) {
    return sample2d(g, [omega, t](double x, double y) {
      const cplx phase =
          std::exp(kI * omega * t) * std::cos(M_PI * x) * std::cos(M_PI * y) / omega;
      return std::sin(M_PI * x) * std::sin(M_PI * y) * std::exp(phase);
    });
  };
  return ec;
}

// ------------------- Examples 3 and 4: wave, 1D ------------------------
// Lifted first-order form on (−8, 8) with periodic discretization.
//
// Example 3 (nonresonant):
//   ∂ₜₜu = ∂ₓₓu + (1−x²)u + [(2+x²(ω²−4))/ω²·e^{iωt} − x²(4+x²ω²)/ω⁴·e^{2iωt}]u,
//   u = e^{−x²/2}·exp(−e^{iωt}x²/ω²),  ∂ₜu(x,0) = −(ix²/ω)u₀.
//
// Example 4 (resonant ± pairs, real cosine potential):
//   f = 1−x² + (2+x²ω²−4x²)cos(ωt)/ω² − 4x²cos²(ωt)/ω⁴ + x⁴sin²(ωt)/ω²;
//   the cos² and sin² averages join the static part and the remainder splits
//   into equal ±1 and ±2 modes,
//   u = e^{−x²/2}·exp(−cos(ωt)x²/ω²),  ∂ₜu(x,0) = 0.
ExampleCase wave_example(int id, double omega, int M) {
  ExampleCase ec;
  EllipticOperator base = build_fourier_diff2(M, {-8.0, 8.0});
  const Eigen::VectorXd x = base.grid.nodes_x;
  const double w2 = omega * omega;

  Eigen::VectorXcd stat(M);
  for (int j = 0; j < M; ++j) {
    const double xx = x[j] * x[j];
    stat[j] = (id == 3) ? cplx(1.0 - xx)
                        : cplx(1.0 - xx - 2.0 * xx / (w2 * w2) +
                               xx * xx / (2.0 * w2));
  }
  base.matrix += Eigen::MatrixXcd(stat.asDiagonal());
  EllipticOperator op = wave_first_order(base);

  OscillatoryPotential pot;
  pot.omega = omega;
  if (id == 3) {
    Eigen::VectorXcd a1(M), a2(M);
    for (int j = 0; j < M; ++j) {
      const double xx = x[j] * x[j];
      a1[j] = (2.0 + xx * (w2 - 4.0)) / w2;
      a2[j] = -xx * (4.0 + xx * w2) / (w2 * w2);
    }
    pot.modes.push_back(constant_mode(1, a1));
    pot.modes.push_back(constant_mode(2, a2));
    pot.symmetric = false;
  } else {
    Eigen::VectorXcd a1(M), a2(M);
    for (int j = 0; j < M; ++j) {
      const double xx = x[j] * x[j];
      a1[j] = (2.0 + xx * w2 - 4.0 * xx) / (2.0 * w2);
      a2[j] = -xx / (w2 * w2) - xx * xx / (4.0 * w2);
    }
    pot.modes.push_back(constant_mode(1, a1));
    pot.modes.push_back(constant_mode(-1, a1));
    pot.modes.push_back(constant_mode(2, a2));
    pot.modes.push_back(constant_mode(-2, a2));
    pot.symmetric = true;
  }

  ec.problem.op = op;
  ec.problem.potential = std::move(pot);
  ec.problem.kind = ProblemKind::WaveLifted;
  ec.problem.t_star = 1.0;

  Eigen::VectorXcd init(2 * M);
  for (int j = 0; j < M; ++j) {
    const double xx = x[j] * x[j];
    const double u0 = std::exp(-xx * (0.5 + 1.0 / w2));
    init[j] = u0;
    init[M + j] = (id == 3) ? -kI * xx / omega * u0 : cplx(0.0);
  }
  ec.problem.initial = StateVector{init, op.grid, true};

  ec.exact.grid = op.grid;
  ec.exact.lifted = true;
  Eigen::VectorXd xn = x;
  if (id == 3) {
    ec.exact.state = [xn, omega](double t) {
      const Eigen::Index m = xn.size();
      Eigen::VectorXcd s(2 * m);
      for (Eigen::Index j = 0; j < m; ++j) {
        const double xx = xn[j] * xn[j];
        const cplx e = std::exp(kI * omega * t);
        const cplx u = std::exp(-xx / 2.0) * std::exp(-e * xx / (omega * omega));
        s[j] = u;
        s[m + j] = -kI * e * xx / omega * u;  // ∂ₜu
      }
      return s;
    };
  } else {
    ec.exact.state = [xn, omega](double t) {
      const Eigen::Index m = xn.size();
      Eigen::VectorXcd s(2 * m);
      for (Eigen::Index j = 0; j < m; ++j) {
        const double xx = xn[j] * xn[j];
        const double u = std::exp(-xx / 2.0) *
                         std::exp(-std::cos(omega * t) * xx / (omega * omega));
        s[j] = u;
        s[m + j] = std::sin(omega * t) * xx / omega * u;
      }
      return s;
    };
  }
  return ec;
}

}  // namespace

Eigen::VectorXcd oscillatory_sum(const OscillatoryPotential& pot, double t) {
  if (pot.modes.empty()) return {};
  Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(pot.modes[0].alpha(t).size());
  for (const Mode& m : pot.modes)
    sum += std::exp(kI * (double(m.n) * pot.omega * t)) * m.alpha(t);
  return sum;
}

ExampleCase example_problem(int id, double omega, int M) {
  if (omega <= 0) throw std::invalid_argument("example_problem: omega must be positive");
  switch (id) {
    case 1:
      return heat_1d(omega, M);
    case 2:
      return heat_2d(omega, M);
    case 3:
    case 4:
      return wave_example(id, omega, M);
    default:
      throw std::invalid_argument("example_problem: id must be 1..4");
  }
}

ExampleCase scalar_problem(double a, double eps, double omega) {
  ExampleCase ec;
  EllipticOperator op;
  op.matrix = Eigen::MatrixXcd::Constant(1, 1, a);
  op.grid = point_grid();

  OscillatoryPotential pot;
  pot.omega = omega;
  pot.modes.push_back(constant_mode(1, Eigen::VectorXcd::Constant(1, eps)));

  ec.problem.op = op;
  ec.problem.potential = std::move(pot);
  ec.problem.kind = ProblemKind::FirstOrder;
  ec.problem.t_star = 1.0;
  ec.problem.initial = StateVector{Eigen::VectorXcd::Ones(1), op.grid, false};

  ec.exact.grid = op.grid;
  ec.exact.lifted = false;
  ec.exact.state = [a, eps, omega](double t) {
    const cplx growth = a * t + eps * (std::exp(kI * omega * t) - 1.0) / (kI * omega);
    return Eigen::VectorXcd::Constant(1, std::exp(growth)).eval();
  };
  return ec;
}

}  // namespace nf3
