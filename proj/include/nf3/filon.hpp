#pragma once

#include <array>
#include <vector>

#include "nf3/operators.hpp"

// Interpolation coefficients for the non-oscillatory kernels of the
// integrator's correction terms.  With E = e^{hL} and one multiplier α per
// simplex variable, the kernels over the window [t, t+h] are
//
//   F(τ)        = e^{(h−τ)L} α(t+τ) e^{τL} u,
//   F(τ₁,τ₂)    = e^{(h−τ₂)L} α₂(t+τ₂) e^{(τ₂−τ₁)L} α₁(t+τ₁) e^{τ₁L} u,
//   F(τ₁,τ₂,τ₃) = likewise with three multipliers,   0 ≤ τ₁ ≤ τ₂ ≤ τ₃ ≤ h.
//
// Sampled at simplex vertices every propagator factor collapses onto e^{hL}
// (applied either before or after the multipliers), so no interior-time
// propagator is needed.  The depth-1 kernel is interpolated by a cubic
// Hermite polynomial from endpoint values and derivatives; depths 2 and 3
// use the affine interpolant through the vertex values.  A resonant ± mode
// pair upgrades the depth-2 interpolant to a bilinear one, pinned down by an
// extra integral condition along the simplex diagonal (see
// diagonal_derivative_integral).  The resulting coefficient vectors are
// contracted against the closed-form oscillatory moments by the stepper.

namespace nf3 {

/// One mode's multiplier α and its time derivative ∂ₜα sampled at the two
/// window ends (a0 = α(t), ah = α(t+h), likewise da0/dah).
struct ModeSamples {
  Eigen::VectorXcd a0, ah;
  Eigen::VectorXcd da0, dah;
};

/// Per-window quantities shared by every kernel sampler: the operator, the
/// cached propagator E = e^{hL}, the state u and its image Eu.
struct StepContext {
  const EllipticOperator* op = nullptr;
  const Propagator* exp_h = nullptr;
  double h = 0.0;
  Eigen::VectorXcd u;
  Eigen::VectorXcd Eu;
};

StepContext make_step_context(const EllipticOperator& op,
                              const Propagator& exp_h,
                              const Eigen::VectorXcd& u);

/// Depth-1 kernel data: values and τ-derivatives at τ = 0 and τ = h.
struct UnivariateSamples {
  Eigen::VectorXcd F0, dF0, Fh, dFh;
};

/// Depth-2 kernel at the simplex vertices (0,0), (0,h), (h,h).
struct BivariateSamples {
  Eigen::VectorXcd F00, F0h, Fhh;
};

/// Depth-3 kernel at the vertices (0,0,0), (0,0,h), (0,h,h), (h,h,h).
struct TrivariateSamples {
  Eigen::VectorXcd F000, F00h, F0hh, Fhhh;
};

/// Endpoint values/derivatives of the depth-1 kernel:
///   F(0)  = E (α(t)∘u)                F(h)  = α(t+h) ∘ Eu
///   F′(0) = E (−ad_L(α(t)) + ∂ₜα(t)∘) u
///   F′(h) = (−ad_L(α(t+h)) + ∂ₜα(t+h)∘) Eu
UnivariateSamples sample_univariate(const StepContext& ctx,
                                    const ModeSamples& m);

/// Depth-2 vertex values; `inner` multiplies at τ₁, `outer` at τ₂.
BivariateSamples sample_bivariate(const StepContext& ctx,
                                  const ModeSamples& inner,
                                  const ModeSamples& outer);

/// Depth-3 vertex values; m1 is innermost (τ₁), m3 outermost (τ₃).
TrivariateSamples sample_trivariate(const StepContext& ctx,
                                    const ModeSamples& m1,
                                    const ModeSamples& m2,
                                    const ModeSamples& m3);

/// Cubic Hermite coefficients: F(τ) ≈ a[0] + a[1]τ + a[2]τ² + a[3]τ³.
struct HermiteCoeffs {
  std::array<Eigen::VectorXcd, 4> a;
};

/// Affine interpolant F ≈ a0 + a1·τ₁ + a2·τ₂ through the three vertices.
struct SimplexLinearCoeffs2 {
  Eigen::VectorXcd a0, a1, a2;
};

/// Affine interpolant F ≈ a0 + a1·τ₁ + a2·τ₂ + a3·τ₃ through the vertices.
struct SimplexLinearCoeffs3 {
  Eigen::VectorXcd a0, a1, a2, a3;
};

/// Bilinear interpolant p = c0 + c1·τ₁ + c2·τ₂ + c12·τ₁τ₂ for a resonant
/// mode pair; matches the three vertex values and the diagonal condition
/// ∫₀^h ∂_{τ₁} p(τ,τ) dτ = X.
struct ResonantPairCoeffs {
  Eigen::VectorXcd c0, c1, c2, c12;
};

HermiteCoeffs hermite_univariate(const UnivariateSamples& s, double h);
SimplexLinearCoeffs2 linear_bivariate(const BivariateSamples& s, double h);
SimplexLinearCoeffs3 linear_trivariate(const TrivariateSamples& s, double h);
ResonantPairCoeffs resonant_bivariate(const BivariateSamples& s,
                                      const Eigen::VectorXcd& X, double h);

/// Gauss-Legendre rule on [0, h] together with the node propagators e^{τⱼL}
/// (forward) and e^{(h−τⱼ)L} (backward) that the diagonal integral needs.
/// Built once per (operator, h) pair and reused across steps.
struct DiagonalQuadrature {
  double h = 0.0;
  std::vector<double> tau;
  std::vector<double> weight;
  std::vector<Eigen::MatrixXcd> forward;
  std::vector<Eigen::MatrixXcd> backward;
};

DiagonalQuadrature make_diagonal_quadrature(const EllipticOperator& op,
                                            double h, int q = 4);

/// The extra resonance datum: the first-slot derivative of the depth-2
/// kernel integrated along the simplex diagonal,
///
///   X = ∫₀^h e^{(h−τ)L} α(t+τ) ∘ (−ad_L(α(t+τ)) + ∂ₜα(t+τ)∘) e^{τL} u dτ,
///
/// evaluated by the supplied quadrature.  alpha_nodes/dalpha_nodes hold the
/// mode sampled at the quadrature times (absolute times t + quad.tau[j]).
Eigen::VectorXcd diagonal_derivative_integral(
    const EllipticOperator& op, const DiagonalQuadrature& quad,
    const std::vector<Eigen::VectorXcd>& alpha_nodes,
    const std::vector<Eigen::VectorXcd>& dalpha_nodes,
    const Eigen::VectorXcd& u);

}  // namespace nf3
