#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "nf3/filon.hpp"
#include "nf3/moments.hpp"
#include "nf3/problems.hpp"

// One time step of the oscillatory integrator: the propagator plus the
// depth-1/2/3 correction terms, each assembled as (interpolation
// coefficients of the non-oscillatory kernel) · (closed-form oscillatory
// moments) · (step-start phase prefactor e^{iω t_k Σn}).  The resonance
// variant routes mode pairs with n₁ + n₂ = 0 through the bilinear
// interpolant and the paired resonant moments instead.
//
// A brute-force evaluation of the truncated iterated-integral series by
// nested quadrature (no interpolation at all) doubles as the oracle the
// stepper is validated against on tiny problems.

namespace nf3 {

/// Thrown when an integration produces a non-finite state; the CLI maps it
/// to its numeric-failure exit code.
struct NonFiniteState : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Method { Nf3, Nf3Resonance, M2, M4 };

/// Everything reusable across the steps of one fixed-step run: the cached
/// propagator e^{hL}, the Gauss-node propagators of the diagonal integral
/// (resonance only), and the memoized moment table.
struct StepPlan {
  double h = 0.0;
  Propagator exp_h;
  DiagonalQuadrature diag_quad;
  std::shared_ptr<MomentTable> moments;
  bool resonance = false;
};

/// Build the per-run caches.  Throws std::invalid_argument for h ≤ 0 or for
/// resonance = true on a potential without the ±n symmetry.
StepPlan make_step_plan(const Problem& prob, double h, bool resonance);

/// One step of the plain scheme from state u at window start t.
StateVector nf3_step(const StateVector& u, double t, const StepPlan& plan,
                     const Problem& prob);

/// One step of the resonance-corrected scheme: identical except that mode
/// pairs with n₁ + n₂ = 0 are pulled out of the bivariate sum and handled
/// with the four-condition bilinear interpolant.
StateVector nf3_resonance_step(const StateVector& u, double t,
                               const StepPlan& plan, const Problem& prob);

/// States at every step boundary, times[0] = 0 through times.back() = t*.
struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;

  const StateVector& final_state() const { return states.back(); }
};

/// Fixed-step integration over [0, prob.t_star].  If t* is not a multiple
/// of h a shorter final step (with its own cached propagator) finishes the
/// run.  Throws NonFiniteState if the state stops being finite.
Trajectory integrate(const Problem& prob, double h, Method method);

/// Σ_{d=0}^{depth} T^d e^{hL} u evaluated by nested composite quadrature of
/// the iterated integrals with the full multiplier f(·, t) — no mode
/// splitting, no interpolation.  Exponential cost; restricted to state
/// length ≤ 4 and depth ≤ 4.  The window is [t0, t0 + h] and u is the
/// problem's initial state.
Eigen::VectorXcd neumann_bruteforce(const Problem& prob, double t0, double h,
                                    int depth, int quad_order);

}  // namespace nf3
