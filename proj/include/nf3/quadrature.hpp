#pragma once

#include <Eigen/Dense>

// Gauss-Legendre rules and a composite-panel antiderivative engine.
//
// The engine is the workhorse of the test oracles: it evaluates running
// integrals I(s) = ∫_a^s g(τ) dτ of an oscillatory integrand at every
// quadrature node of a uniform panel subdivision, which is what the nested
// simplex integrals and the brute-force series reference need.  Within each
// panel the integrand is represented by its Legendre expansion (computed from
// the Gauss-node samples), whose antiderivative follows from the recurrence
// ∫ P_k = (P_{k+1} - P_{k-1}) / (2k+1).

namespace nf3 {

struct GaussLegendre {
  Eigen::VectorXd nodes;    // ascending, on (-1, 1)
  Eigen::VectorXd weights;  // sum to 2
};

// q-point rule, cached per q.  q >= 1.
const GaussLegendre& gauss_legendre(int q);

class PanelIntegrator {
 public:
  // Uniform subdivision of [a, b] into `panels` panels with a q-point
  // Gauss-Legendre rule on each.
  PanelIntegrator(double a, double b, int panels, int q);

  // Absolute positions of all panels*q sample points, ascending.
  const Eigen::VectorXd& nodes() const { return nodes_; }
  int panels() const { return panels_; }
  int order() const { return q_; }

  // Given rows of g sampled at nodes() (one column per state component),
  // returns the same-shape matrix of prefix integrals I(s_i) = ∫_a^{s_i} g,
  // and optionally the full integral I(b).
  Eigen::MatrixXcd prefix(const Eigen::MatrixXcd& values,
                          Eigen::RowVectorXcd* total = nullptr) const;

  // Full integral only (cheaper bookkeeping, same quadrature).
  Eigen::RowVectorXcd integrate(const Eigen::MatrixXcd& values) const;

  // Panel count so a q-point panel rule resolves phase rate `rate`
  // (radians per unit length) over an interval of length `len`.
  static int panels_for_rate(double rate, double len, int q);

 private:
  double a_, dx_;
  int panels_, q_;
  Eigen::VectorXd nodes_;
  Eigen::MatrixXd coef_;  // q x q: node samples -> Legendre coefficients
  Eigen::MatrixXd anti_;  // q x q: Legendre coefficients -> node antiderivatives
};

}  // namespace nf3
