#include "nf3/operators.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"

using namespace nf3;
using cplx = std::complex<double>;

namespace {

Eigen::VectorXcd sample(const Eigen::VectorXd& x, double (*f)(double)) {
  Eigen::VectorXcd v(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) v[i] = f(x[i]);
  return v;
}

double max_abs(const Eigen::VectorXcd& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("fourier second derivative: eigenfunctions and structure") {
  const auto op = build_fourier_diff2(100, {0.0, 2.0 * M_PI});
  const auto& x = op.grid.nodes_x;

  const Eigen::VectorXcd s = sample(x, [](double t) { return std::sin(t); });
  CHECK(max_abs(op.matrix * s + s) <= 1e-8);

  const Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(100);
  CHECK(max_abs(op.matrix * ones) <= 1e-10);

  // Numerically symmetric.
  CHECK((op.matrix - op.matrix.transpose()).cwiseAbs().maxCoeff() <= 1e-10);

  const auto op32 = build_fourier_diff2(32, {0.0, 2.0 * M_PI});
  Eigen::VectorXcd e2(32);
  for (int j = 0; j < 32; ++j)
    e2[j] = std::exp(cplx(0.0, 2.0 * op32.grid.nodes_x[j]));
  CHECK(max_abs(op32.matrix * e2 + 4.0 * e2) <= 1e-10);

  // Interval scaling: second derivative of sin(2πx/Lx·…) on (0,1).
  const auto opl = build_fourier_diff2(64, {0.0, 1.0});
  Eigen::VectorXcd s2(64);
  for (int j = 0; j < 64; ++j) s2[j] = std::sin(2.0 * M_PI * opl.grid.nodes_x[j]);
  const double w2 = 4.0 * M_PI * M_PI;
  CHECK(max_abs(opl.matrix * s2 + w2 * s2) <= 1e-7);

  CHECK_THROWS(build_fourier_diff2(33, {0.0, 1.0}));
  CHECK_THROWS(build_fourier_diff2(2, {0.0, 1.0}));
}

TEST_CASE("chebyshev dirichlet: eigenfunctions, side, spectrum") {
  const auto op = build_chebyshev_dirichlet(20, {-1.0, 1.0});
  CHECK(op.matrix.rows() == 19);  // interior nodes only
  CHECK(op.grid.state_length() == 19);

  const auto& x = op.grid.nodes_x;
  Eigen::VectorXcd s(19);
  for (int j = 0; j < 19; ++j) s[j] = std::sin(M_PI * x[j]);
  CHECK(max_abs(op.matrix * s + (M_PI * M_PI) * s) <= 1e-6);

  // Smallest-magnitude eigenvalue of d²/dx² with Dirichlet ends on (−1,1)
  // is −(π/2)² ≈ −2.4674.
  const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(op.matrix);
  double best = 1e300;
  cplx lam;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()[i]) < best) {
      best = std::abs(es.eigenvalues()[i]);
      lam = es.eigenvalues()[i];
    }
  const double target = -M_PI * M_PI / 4.0;
  CHECK(std::abs(lam - target) <= 1e-4 * std::abs(target));

  // Nodes ascend and weights integrate 1 − x² to 4/3.
  for (int j = 1; j < 19; ++j) CHECK(x[j] > x[j - 1]);
  double integral = 0.0;
  for (int j = 0; j < 19; ++j)
    integral += op.grid.weights[j] * (1.0 - x[j] * x[j]);
  CHECK(integral == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("kron_sum: scalar, eigenfunction, full spectrum") {
  EllipticOperator a, b;
  a.matrix = Eigen::MatrixXcd::Constant(1, 1, 3.0);
  a.grid = point_grid();
  b = a;
  CHECK(kron_sum(a, b).matrix(0, 0) == cplx(6.0, 0.0));

  const auto ox = build_chebyshev_dirichlet(20, {-1.0, 1.0});
  const auto sum = kron_sum(ox, ox);
  const auto& g = sum.grid;
  CHECK(g.state_length() == 19 * 19);
  Eigen::VectorXcd u(19 * 19);
  for (int ix = 0; ix < 19; ++ix)
    for (int iy = 0; iy < 19; ++iy)
      u[ix * 19 + iy] =
          std::sin(M_PI * g.nodes_x[ix]) * std::sin(M_PI * g.nodes_y[iy]);
  CHECK(max_abs(sum.matrix * u + 2.0 * M_PI * M_PI * u) <= 1e-5);

  // Exhaustive spectrum check at M = 6: eigenvalues of the sum are all
  // pairwise sums of the factor eigenvalues.
  const auto small = build_chebyshev_dirichlet(6, {-1.0, 1.0});
  const auto ss = kron_sum(small, small);
  const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ef(small.matrix);
  const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(ss.matrix);
  std::vector<double> want, got;
  for (Eigen::Index i = 0; i < 5; ++i)
    for (Eigen::Index j = 0; j < 5; ++j)
      want.push_back((ef.eigenvalues()[i] + ef.eigenvalues()[j]).real());
  for (Eigen::Index i = 0; i < 25; ++i) got.push_back(es.eigenvalues()[i].real());
  std::sort(want.begin(), want.end());
  std::sort(got.begin(), got.end());
  for (int i = 0; i < 25; ++i)
    CHECK(std::abs(want[i] - got[i]) <= 1e-8 * std::max(1.0, std::abs(want[i])));
}

TEST_CASE("matrix exponential: identity, scalar, rotation, semigroup") {
  EllipticOperator a;
  a.matrix = Eigen::MatrixXcd::Constant(1, 1, cplx(-1.0, 0.7));
  a.grid = point_grid();

  const auto p0 = matrix_exp(a, 0.0);
  CHECK(std::abs(p0.matrix(0, 0) - 1.0) <= 1e-13);

  const auto p1 = matrix_exp(a, 1.0);
  CHECK(std::abs(p1.matrix(0, 0) - std::exp(cplx(-1.0, 0.7))) <= 1e-14);

  EllipticOperator rot;
  rot.matrix.resize(2, 2);
  rot.matrix << 0.0, 1.0, -1.0, 0.0;
  rot.grid = point_grid();
  const auto pr = matrix_exp(rot, M_PI / 2);
  Eigen::MatrixXcd want(2, 2);
  want << 0.0, 1.0, -1.0, 0.0;
  CHECK((pr.matrix - want).cwiseAbs().maxCoeff() <= 1e-12);

  // Semigroup law on a stiff diffusion operator.
  const auto L = build_fourier_diff2(64, {0.0, 2.0 * M_PI});
  std::mt19937 rng(23u);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int t = 0; t < 4; ++t) {
    const double s1 = u01(rng), s2 = u01(rng);
    const auto e1 = matrix_exp(L, s1).matrix;
    const auto e2 = matrix_exp(L, s2).matrix;
    const auto e12 = matrix_exp(L, s1 + s2).matrix;
    CHECK((e12 - e1 * e2).cwiseAbs().maxCoeff() <= 1e-9);
  }

  CHECK_THROWS(matrix_exp(a, -0.5));
  EllipticOperator bad;
  bad.matrix = Eigen::MatrixXcd::Constant(1, 1, std::nan(""));
  bad.grid = point_grid();
  CHECK_THROWS(matrix_exp(bad, 1.0));
}

TEST_CASE("commutator action") {
  const auto L = build_fourier_diff2(100, {0.0, 2.0 * M_PI});
  const auto& x = L.grid.nodes_x;

  // Constants commute.
  const Eigen::VectorXcd c = Eigen::VectorXcd::Constant(100, cplx(2.0, -1.0));
  const Eigen::VectorXcd v = sample(x, [](double t) { return std::sin(t); });
  CHECK(max_abs(commutator_apply(L, c, v)) <= 1e-10);

  // 1×1 operators commute with any multiplier.
  EllipticOperator s;
  s.matrix = Eigen::MatrixXcd::Constant(1, 1, 4.2);
  s.grid = point_grid();
  Eigen::VectorXcd one(1), val(1);
  one << cplx(0.3, 0.1);
  val << cplx(1.0, -2.0);
  CHECK(max_abs(commutator_apply(s, one, val)) == 0.0);

  // α = cos x, v = sin x: (αv)'' − α v'' = −2 sin 2x + ½ sin 2x = −(3/2) sin 2x.
  const Eigen::VectorXcd alpha = sample(x, [](double t) { return std::cos(t); });
  Eigen::VectorXcd want(100);
  for (int j = 0; j < 100; ++j) want[j] = -1.5 * std::sin(2.0 * x[j]);
  CHECK(max_abs(commutator_apply(L, alpha, v) - want) <= 1e-7);

  // Bilinearity in (α, v).
  std::mt19937 rng(29u);
  std::normal_distribution<double> g(0.0, 1.0);
  auto rand_vec = [&](int n) {
    Eigen::VectorXcd r(n);
    for (int i = 0; i < n; ++i) r[i] = cplx(g(rng), g(rng));
    return r;
  };
  const auto a1 = rand_vec(100), a2 = rand_vec(100);
  const auto v1 = rand_vec(100), v2 = rand_vec(100);
  const cplx c1(0.7, -0.2), c2(-1.3, 0.5);
  const Eigen::VectorXcd lhs = commutator_apply(L, c1 * a1 + c2 * a2, v1);
  const Eigen::VectorXcd rhs =
      c1 * commutator_apply(L, a1, v1) + c2 * commutator_apply(L, a2, v1);
  CHECK(max_abs(lhs - rhs) <= 1e-12 * std::max(1.0, max_abs(rhs)));
  const Eigen::VectorXcd lhs2 = commutator_apply(L, a1, c1 * v1 + c2 * v2);
  const Eigen::VectorXcd rhs2 =
      c1 * commutator_apply(L, a1, v1) + c2 * commutator_apply(L, a1, v2);
  CHECK(max_abs(lhs2 - rhs2) <= 1e-12 * std::max(1.0, max_abs(rhs2)));
}

TEST_CASE("wave first-order lift") {
  const auto L = build_fourier_diff2(16, {0.0, 2.0 * M_PI});
  const auto A = wave_first_order(L);
  CHECK(A.lifted);
  CHECK(A.matrix.rows() == 32);
  CHECK(A.matrix.topLeftCorner(16, 16).cwiseAbs().maxCoeff() == 0.0);
  CHECK(A.matrix.bottomRightCorner(16, 16).cwiseAbs().maxCoeff() == 0.0);
  CHECK((A.matrix.topRightCorner(16, 16) - Eigen::MatrixXcd::Identity(16, 16))
            .cwiseAbs()
            .maxCoeff() == 0.0);

  // A² = diag(L, L).
  Eigen::MatrixXcd sq = A.matrix * A.matrix;
  CHECK((sq.topLeftCorner(16, 16) - L.matrix).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((sq.bottomRightCorner(16, 16) - L.matrix).cwiseAbs().maxCoeff() <= 1e-12);

  // Harmonic oscillator closed form at k = 2, t = 0.3.
  EllipticOperator osc;
  osc.matrix = Eigen::MatrixXcd::Constant(1, 1, -4.0);
  osc.grid = point_grid();
  const auto Aosc = wave_first_order(osc);
  const auto e = matrix_exp(Aosc, 0.3).matrix;
  const double k = 2.0, t = 0.3;
  CHECK(std::abs(e(0, 0) - std::cos(k * t)) <= 1e-12);
  CHECK(std::abs(e(0, 1) - std::sin(k * t) / k) <= 1e-12);
  CHECK(std::abs(e(1, 0) + k * std::sin(k * t)) <= 1e-12);
  CHECK(std::abs(e(1, 1) - std::cos(k * t)) <= 1e-12);

  // Lifted multiplier action and its dense form agree: (u,v) ↦ (0, α∘u).
  Eigen::VectorXcd alpha(2), uv(4);
  alpha << cplx(1.0, 2.0), cplx(-0.5, 0.0);
  uv << 1.0, 2.0, 3.0, 4.0;
  const Eigen::VectorXcd act = multiplier_apply(alpha, uv, true);
  CHECK(act.head(2).cwiseAbs().maxCoeff() == 0.0);
  CHECK(act[2] == cplx(1.0, 2.0));
  CHECK(act[3] == cplx(-1.0, 0.0));
  CHECK(max_abs(act - lift_multiplier(alpha) * uv) == 0.0);
}
