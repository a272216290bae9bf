#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "nf3/operators.hpp"

// Problem descriptions: a spatial operator with the time-independent part of
// the potential folded in, plus the oscillatory modes
//
//     f_osc(x, t) = Σ_{n ≠ 0} α_n(x, t) · e^{inωt},
//
// and the catalog of concrete cases with known analytic solutions — four PDE
// examples (heat 1D/2D and two wave equations, one with resonant mode pairs)
// and a scalar ODE used as an exact oracle.

namespace nf3 {

enum class ProblemKind { FirstOrder, WaveLifted };

/// One oscillatory mode: harmonic index n and samplers of α_n(·, t) and
/// ∂ₜα_n(·, t) on the grid (unlifted length even for wave problems).
struct Mode {
  long n = 0;
  std::function<Eigen::VectorXcd(double)> alpha;
  std::function<Eigen::VectorXcd(double)> dalpha;
};

struct OscillatoryPotential {
  double omega = 1.0;
  std::vector<Mode> modes;
  bool symmetric = false;  // α_{−n} = α_n with shared samplers
};

struct Problem {
  EllipticOperator op;  // static potential already folded in; lifted for wave
  OscillatoryPotential potential;
  StateVector initial;
  double t_star = 1.0;
  ProblemKind kind = ProblemKind::FirstOrder;
};

/// Grid samples of Σₙ αₙ(t)·e^{inωt} (the full oscillatory multiplier).
Eigen::VectorXcd oscillatory_sum(const OscillatoryPotential& pot, double t);

/// Exact solution sampled on the problem's grid; lifted states stack
/// (u, ∂ₜu) like the numerical ones.
struct AnalyticSolution {
  std::function<Eigen::VectorXcd(double)> state;
  GridSpec grid;
  bool lifted = false;
};

struct ExampleCase {
  Problem problem;
  AnalyticSolution exact;
};

/// The four catalog problems:
///   1 — heat equation on (0, 2π), Fourier, M = 100 default
///   2 — two-dimensional heat equation on (−1,1)², Chebyshev-Dirichlet, M = 20
///   3 — wave equation on (−8, 8), Fourier, nonresonant modes
///   4 — wave equation on (−8, 8), Fourier, resonant ± mode pairs
/// M is the collocation count per dimension.
ExampleCase example_problem(int id, double omega, int M);

/// u′ = a·u + ε e^{iωt} u with exact solution exp(at + ε(e^{iωt}−1)/(iω))·u₀;
/// the 1×1 case where the scheme's error can be measured against an exact
/// closed form.
ExampleCase scalar_problem(double a, double eps, double omega);

}  // namespace nf3
