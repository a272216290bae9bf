#pragma once

#include <string>

#include "nf3/problems.hpp"

// Baseline exponential integrators for comparison runs, and the discrete L²
// error against an analytic solution.

namespace nf3 {

/// One sweep point's outcome, as written to CSV by the command-line tool.
struct ErrorReport {
  std::string method;
  double omega = 0.0;
  double h = 0.0;
  int grid_points = 0;
  double t_final = 0.0;
  double l2_error = 0.0;
  double wall_seconds = 0.0;
};

/// Full generator at time t: operator matrix plus the oscillatory multiplier
/// (diagonal for first-order problems, lower-left block for lifted ones).
Eigen::MatrixXcd full_generator(const Problem& prob, double t);

/// Exponential midpoint rule (order two): u ← exp(h·G(t+h/2))·u.
StateVector m2_step(const StateVector& u, double t, double h, const Problem& prob);

/// Two-node Gauss Magnus rule (order four): with G_j = G(t+c_j h),
/// c_{1,2} = 1/2 ∓ √3/6,  u ← exp(h(G₁+G₂)/2 + h²·√3/12·[G₂,G₁])·u.
StateVector m4_step(const StateVector& u, double t, double h, const Problem& prob);

/// Quadrature-weighted discrete L² distance between the numerical state and
/// the analytic solution at time t.  Lifted states compare the u-component
/// only (first half of the stacked vector).
double error_l2(const StateVector& u_num, const AnalyticSolution& exact, double t);

}  // namespace nf3
