#pragma once

#include <Eigen/Dense>
#include <array>
#include <utility>

// Spectral discretizations of the spatial operator, dense semigroup
// propagators e^{tL}, and the multiplier/commutator actions the integrator's
// derivative formulas are built from.
//
// Grids come in three flavours: periodic Fourier collocation, Chebyshev
// collocation with homogeneous Dirichlet rows eliminated (interior nodes
// only), and tensor products of those; a degenerate single-point grid serves
// the scalar model problems.  Second-derivative matrices follow the classic
// spectral-collocation constructions (Trefethen, "Spectral Methods in
// MATLAB": the periodic second-difference matrix and the Chebyshev
// differentiation matrix squared).

namespace nf3 {

enum class GridKind { Fourier1D, Chebyshev1D, Tensor2D, Point };

/// Collocation grid: nodes, physical intervals, and quadrature weights for
/// discrete L² norms (trapezoid weights on periodic grids, Clenshaw-Curtis
/// on Chebyshev grids).
struct GridSpec {
  GridKind kind = GridKind::Point;
  int mx = 1, my = 1;  // stored points per dimension (interior for Chebyshev)
  std::array<double, 2> x_interval{0.0, 0.0};
  std::array<double, 2> y_interval{0.0, 0.0};
  Eigen::VectorXd nodes_x, nodes_y;  // ascending physical coordinates
  Eigen::VectorXd weights;           // length state_length(), row-major (x-major)

  int state_length() const { return mx * my; }
};

GridSpec point_grid();
GridSpec fourier_grid(int M, double a, double b);
/// M is the full collocation count; the grid keeps the M−1 interior nodes.
GridSpec chebyshev_interior_grid(int M, double a, double b);
GridSpec tensor_grid(const GridSpec& gx, const GridSpec& gy);

/// Discretized spatial operator (any time-independent potential folded in).
/// `lifted` marks the 2×2-block first-order form of a wave problem, whose
/// matrix side is twice the grid's state length.
struct EllipticOperator {
  Eigen::MatrixXcd matrix;
  GridSpec grid;
  int order = 2;  // differential order 2p, metadata
  bool lifted = false;

  Eigen::Index side() const { return matrix.rows(); }
};

/// Dense semigroup propagator e^{step·L}.
struct Propagator {
  EllipticOperator source;
  double step = 0.0;
  Eigen::MatrixXcd matrix;

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const { return matrix * v; }
};

/// Grid samples of the solution; lifted states stack (u, ∂ₜu).
struct StateVector {
  Eigen::VectorXcd values;
  GridSpec grid;
  bool lifted = false;
};

/// Periodic spectral second-derivative matrix on (a,b), M even, M ≥ 4.
EllipticOperator build_fourier_diff2(int M, std::pair<double, double> interval);

/// Chebyshev second derivative with homogeneous Dirichlet conditions
/// eliminated; matrix side M−1, M ≥ 4.
EllipticOperator build_chebyshev_dirichlet(int M, std::pair<double, double> interval);

/// Ax ⊗ I + I ⊗ Ay on the tensor grid (row-major, x index outermost).
EllipticOperator kron_sum(const EllipticOperator& Ax, const EllipticOperator& Ay);

/// e^{tA}, t ≥ 0, by Padé order-13 scaling and squaring.
Propagator matrix_exp(const EllipticOperator& A, double t);

/// The bare dense exponential engine (used by matrix_exp and by the
/// quadratic-exponential reference integrators).
Eigen::MatrixXcd matrix_exp_dense(Eigen::MatrixXcd A);

/// Pointwise multiplier action of grid samples alpha: α∘v, or the lifted
/// block action (u, w) ↦ (0, α∘u) when `lifted`.
Eigen::VectorXcd multiplier_apply(const Eigen::VectorXcd& alpha,
                                  const Eigen::VectorXcd& state, bool lifted);

/// Commutator action ad_L(α)v = L(α∘v) − α∘(Lv), with ∘ the (possibly
/// lifted) multiplier action of op's kind.
Eigen::VectorXcd commutator_apply(const EllipticOperator& op,
                                  const Eigen::VectorXcd& alpha,
                                  const Eigen::VectorXcd& v);

/// First-order-system form A = [[0, I], [L, 0]] of u_tt = L u.
EllipticOperator wave_first_order(const EllipticOperator& L);

/// Dense block multiplier [[0,0],[diag(α),0]] (the matrix whose action
/// multiplier_apply(·,·,true) implements).
Eigen::MatrixXcd lift_multiplier(const Eigen::VectorXcd& alpha);

}  // namespace nf3
