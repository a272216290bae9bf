#include "nf3/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace nf3 {
namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

// Clenshaw-Curtis weights for the Chebyshev-Gauss-Lobatto points
// x_j = cos(jπ/N), j = 0..N, on [-1,1] (Trefethen's clencurt).
Eigen::VectorXd clenshaw_curtis(int N) {
  Eigen::VectorXd w(N + 1);
  w.setZero();
  if (N == 0) {
    w[0] = 2.0;
    return w;
  }
  for (int j = 0; j <= N; ++j) {
    const double theta = M_PI * j / N;
    double s = 0.0;
    for (int k = 1; k <= N / 2; ++k) {
      const double b = (2 * k == N) ? 1.0 : 2.0;
      s += b * std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
    }
    const double c = (j == 0 || j == N) ? 1.0 : 2.0;
    w[j] = c / N * (1.0 - s);
  }
  return w;
}

// Chebyshev differentiation matrix on x_j = cos(jπ/N), j = 0..N (descending).
Eigen::MatrixXd cheb_diff(int N) {
  Eigen::VectorXd x(N + 1), c(N + 1);
  for (int j = 0; j <= N; ++j) {
    x[j] = std::cos(M_PI * j / N);
    c[j] = ((j == 0 || j == N) ? 2.0 : 1.0) * ((j % 2) ? -1.0 : 1.0);
  }
  Eigen::MatrixXd D(N + 1, N + 1);
  for (int i = 0; i <= N; ++i)
    for (int j = 0; j <= N; ++j)
      if (i != j) D(i, j) = (c[i] / c[j]) / (x[i] - x[j]);
  for (int i = 0; i <= N; ++i) {
    double s = 0.0;
    for (int j = 0; j <= N; ++j)
      if (j != i) s += D(i, j);
    D(i, i) = -s;  // rows of a differentiation matrix kill constants
  }
  return D;
}

}  // namespace

GridSpec point_grid() {
  GridSpec g;
  g.kind = GridKind::Point;
  g.mx = g.my = 1;
  g.nodes_x = Eigen::VectorXd::Zero(1);
  g.weights = Eigen::VectorXd::Ones(1);
  return g;
}

GridSpec fourier_grid(int M, double a, double b) {
  require(M >= 4 && M % 2 == 0, "fourier_grid: M must be even and >= 4");
  require(b > a, "fourier_grid: empty interval");
  GridSpec g;
  g.kind = GridKind::Fourier1D;
  g.mx = M;
  g.x_interval = {a, b};
  g.nodes_x.resize(M);
  const double dx = (b - a) / M;
  for (int j = 0; j < M; ++j) g.nodes_x[j] = a + j * dx;
  g.weights = Eigen::VectorXd::Constant(M, dx);
  return g;
}

GridSpec chebyshev_interior_grid(int M, double a, double b) {
  require(M >= 4, "chebyshev_interior_grid: M must be >= 4");
  require(b > a, "chebyshev_interior_grid: empty interval");
  GridSpec g;
  g.kind = GridKind::Chebyshev1D;
  g.mx = M - 1;
  g.x_interval = {a, b};
  g.nodes_x.resize(M - 1);
  const Eigen::VectorXd w = clenshaw_curtis(M);
  g.weights.resize(M - 1);
  // cos ordering is descending; store ascending physical nodes.
  for (int j = 1; j < M; ++j) {
    const double xi = std::cos(M_PI * j / M);  // descending in j
    g.nodes_x[M - 1 - j] = a + 0.5 * (b - a) * (xi + 1.0);
    g.weights[M - 1 - j] = 0.5 * (b - a) * w[j];
  }
  return g;
}

GridSpec tensor_grid(const GridSpec& gx, const GridSpec& gy) {
  require(gx.kind != GridKind::Tensor2D && gy.kind != GridKind::Tensor2D,
          "tensor_grid: factors must be one-dimensional");
  GridSpec g;
  g.kind = GridKind::Tensor2D;
  g.mx = gx.mx;
  g.my = gy.mx;
  g.x_interval = gx.x_interval;
  g.y_interval = gy.x_interval;
  g.nodes_x = gx.nodes_x;
  g.nodes_y = gy.nodes_x;
  g.weights.resize(g.mx * g.my);
  for (int ix = 0; ix < g.mx; ++ix)
    for (int iy = 0; iy < g.my; ++iy)
      g.weights[ix * g.my + iy] = gx.weights[ix] * gy.weights[iy];
  return g;
}

EllipticOperator build_fourier_diff2(int M, std::pair<double, double> interval) {
  GridSpec grid = fourier_grid(M, interval.first, interval.second);
  // Periodic second-difference matrix for spacing 2π/M (Trefethen), then
  // rescaled from the reference circle to the physical interval.
  const double dt = 2.0 * M_PI / M;
  Eigen::MatrixXd D2(M, M);
  for (int k = 0; k < M; ++k) {
    for (int j = 0; j < M; ++j) {
      if (k == j) {
        D2(k, j) = -M_PI * M_PI / (3.0 * dt * dt) - 1.0 / 6.0;
      } else {
        const int d = k - j;
        const double s = std::sin(0.5 * d * dt);
        D2(k, j) = -(((d % 2) != 0) ? -1.0 : 1.0) / (2.0 * s * s);
      }
    }
  }
  const double scale = 2.0 * M_PI / (interval.second - interval.first);
  EllipticOperator op;
  op.matrix = (scale * scale) * D2.cast<std::complex<double>>();
  op.grid = std::move(grid);
  return op;
}

EllipticOperator build_chebyshev_dirichlet(int M, std::pair<double, double> interval) {
  GridSpec grid = chebyshev_interior_grid(M, interval.first, interval.second);
  const Eigen::MatrixXd D = cheb_diff(M);
  const Eigen::MatrixXd D2 = D * D;
  // Interior block (Dirichlet rows/columns eliminated), reversed to match
  // the ascending node order.
  const int n = M - 1;
  Eigen::MatrixXd A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = D2(M - 1 - i, M - 1 - j);
  const double scale = 2.0 / (interval.second - interval.first);
  EllipticOperator op;
  op.matrix = (scale * scale) * A.cast<std::complex<double>>();
  op.grid = std::move(grid);
  return op;
}

EllipticOperator kron_sum(const EllipticOperator& Ax, const EllipticOperator& Ay) {
  require(!Ax.lifted && !Ay.lifted, "kron_sum: factors must not be lifted");
  require(Ax.grid.kind != GridKind::Tensor2D && Ay.grid.kind != GridKind::Tensor2D,
          "kron_sum: factors must be one-dimensional");
  const Eigen::Index nx = Ax.matrix.rows(), ny = Ay.matrix.rows();
  require(Ax.matrix.cols() == nx && Ay.matrix.cols() == ny,
          "kron_sum: factors must be square");
  EllipticOperator op;
  op.grid = tensor_grid(Ax.grid, Ay.grid);
  op.matrix = Eigen::MatrixXcd::Zero(nx * ny, nx * ny);
  for (Eigen::Index ix = 0; ix < nx; ++ix)
    for (Eigen::Index jx = 0; jx < nx; ++jx)
      for (Eigen::Index iy = 0; iy < ny; ++iy)
        op.matrix(ix * ny + iy, jx * ny + iy) += Ax.matrix(ix, jx);
  for (Eigen::Index ix = 0; ix < nx; ++ix)
    for (Eigen::Index iy = 0; iy < ny; ++iy)
      for (Eigen::Index jy = 0; jy < ny; ++jy)
        op.matrix(ix * ny + iy, ix * ny + jy) += Ay.matrix(iy, jy);
  op.order = std::max(Ax.order, Ay.order);
  return op;
}

Eigen::MatrixXcd matrix_exp_dense(Eigen::MatrixXcd A) {
  // Diagonal Padé approximant of order 13 with scaling and squaring
  // (coefficients and θ₁₃ from Higham, "Functions of Matrices", alg. 10.20).
  static const double b[14] = {64764752532480000.0, 32382376266240000.0,
                               7771770303897600.0,  1187353796428800.0,
                               129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,
                               1323241920.0,        40840800.0,
                               960960.0,            16380.0,
                               182.0,               1.0};
  const double theta13 = 5.371920351148152;
  const Eigen::Index n = A.rows();
  const double norm1 = A.cwiseAbs().colwise().sum().maxCoeff();
  int s = 0;
  if (norm1 > theta13) s = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
  if (s > 0) A *= std::pow(2.0, -s);

  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd A2 = A * A;
  const Eigen::MatrixXcd A4 = A2 * A2;
  const Eigen::MatrixXcd A6 = A2 * A4;
  const Eigen::MatrixXcd U =
      A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 + b[5] * A4 +
           b[3] * A2 + b[1] * I);
  const Eigen::MatrixXcd V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) +
                             b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;
  Eigen::MatrixXcd X = (V - U).partialPivLu().solve(V + U);
  for (int i = 0; i < s; ++i) X = X * X;
  return X;
}

Propagator matrix_exp(const EllipticOperator& A, double t) {
  if (t < 0) throw std::domain_error("matrix_exp: negative duration");
  if (!A.matrix.allFinite())
    throw std::runtime_error("matrix_exp: operator has non-finite entries");
  Propagator p;
  p.source = A;
  p.step = t;
  if (t == 0.0) {
    p.matrix = Eigen::MatrixXcd::Identity(A.side(), A.side());
  } else {
    p.matrix = matrix_exp_dense(t * A.matrix);
  }
  return p;
}

Eigen::VectorXcd multiplier_apply(const Eigen::VectorXcd& alpha,
                                  const Eigen::VectorXcd& state, bool lifted) {
  if (!lifted) {
    require(alpha.size() == state.size(), "multiplier_apply: size mismatch");
    return alpha.cwiseProduct(state);
  }
  const Eigen::Index n = alpha.size();
  require(state.size() == 2 * n, "multiplier_apply: lifted size mismatch");
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(2 * n);
  out.tail(n) = alpha.cwiseProduct(state.head(n));
  return out;
}

Eigen::VectorXcd commutator_apply(const EllipticOperator& op,
                                  const Eigen::VectorXcd& alpha,
                                  const Eigen::VectorXcd& v) {
  require(v.size() == op.side(), "commutator_apply: state size mismatch");
  return op.matrix * multiplier_apply(alpha, v, op.lifted) -
         multiplier_apply(alpha, op.matrix * v, op.lifted);
}

EllipticOperator wave_first_order(const EllipticOperator& L) {
  require(!L.lifted, "wave_first_order: operator is already first-order");
  const Eigen::Index n = L.side();
  EllipticOperator A;
  A.grid = L.grid;
  A.order = L.order;
  A.lifted = true;
  A.matrix = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  A.matrix.topRightCorner(n, n) = Eigen::MatrixXcd::Identity(n, n);
  A.matrix.bottomLeftCorner(n, n) = L.matrix;
  return A;
}

Eigen::MatrixXcd lift_multiplier(const Eigen::VectorXcd& alpha) {
  const Eigen::Index n = alpha.size();
  Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  B.bottomLeftCorner(n, n) = alpha.asDiagonal();
  return B;
}

}  // namespace nf3
