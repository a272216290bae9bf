#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <mutex>
#include <unordered_map>

// Oscillatory moments over the step interval [0, h] and the ordered simplices
//   σ_d(h) = { 0 ≤ τ_1 ≤ … ≤ τ_d ≤ h },   d = 1, 2, 3:
//
//   ∫_{σ_d(h)} τ_1^{e_1} … τ_d^{e_d} · e^{iω(n_1 τ_1 + … + n_d τ_d)} dτ
//
// evaluated in closed form.  These are the scalar weights multiplying the
// interpolation coefficients in the integrator's correction terms; they are
// the only place where the fast phases are integrated, so they must stay
// accurate uniformly in ωh — from the non-oscillatory limit ωh → 0 up to
// ωh·|n| ~ 1e4 — including resonant frequency vectors whose partial sums
// vanish exactly.

namespace nf3 {

/// Monomial factor τ_1^{e_1}···τ_d^{e_d} of a moment integrand.
struct MonomialIndex {
  int depth = 1;               // number of simplex variables d (1, 2 or 3)
  std::array<int, 3> e{0, 0, 0};

  /// τ^k on [0,h], 0 ≤ k ≤ 3.
  static MonomialIndex uni(int k);
  /// τ_1^{e1} τ_2^{e2} on σ₂(h), each exponent 0 or 1 (so 1, τ₁, τ₂, τ₁τ₂).
  static MonomialIndex bi(int e1, int e2);
  /// 1, τ₁, τ₂ or τ₃ on σ₃(h): at most one exponent may be 1.
  static MonomialIndex tri(int e1, int e2, int e3);

  int total_degree() const { return e[0] + e[1] + e[2]; }
};

/// Integer harmonics (n_1[, n_2[, n_3]]) multiplying ω in the phase.
/// Entries are nonzero; partial sums may vanish (resonance is legal).
struct FrequencyVector {
  int depth = 1;
  std::array<long, 3> n{0, 0, 0};

  static FrequencyVector uni(long n1);
  static FrequencyVector bi(long n1, long n2);
  static FrequencyVector tri(long n1, long n2, long n3);
};

/// Complete identification of one moment integral.
struct MomentKey {
  MonomialIndex mono;
  FrequencyVector freq;
  double omega = 0.0;
  double h = 0.0;
};

/// ∫₀^h τ^k e^{iaτ} dτ for 0 ≤ k ≤ 3 and any real phase rate a.
std::complex<double> mu1(int k, double a, double h);

/// ∫₀^h ∫₀^{τ₂} mono · e^{iω(n₁τ₁ + n₂τ₂)} dτ₁ dτ₂.
std::complex<double> mu2(const MonomialIndex& mono, const FrequencyVector& n,
                         double omega, double h);

/// ∫₀^h ∫₀^{τ₃} ∫₀^{τ₂} mono · e^{iω(n₁τ₁ + n₂τ₂ + n₃τ₃)} dτ₁ dτ₂ dτ₃.
std::complex<double> mu3(const MonomialIndex& mono, const FrequencyVector& n,
                         double omega, double h);

/// The paired resonant moment mu2(mono,(n,−n)) + mu2(mono,(−n,n)), n ≥ 1.
/// Always consumed as a pair by the resonance correction; real up to rounding.
std::complex<double> mu2_resonant_pair(const MonomialIndex& mono, long n,
                                       double omega, double h);

/// Dispatch on key.mono.depth to mu1/mu2/mu3 (mu1 with a = n₁ω).
std::complex<double> moment(const MomentKey& key);

/// Brute-force evaluation of the same integral by composite Gauss-Legendre
/// prefix integration, `nodes` points per panel (nodes ≥ 32) with the panel
/// count chosen from the total phase rate.  Test oracle; also the fallback
/// for parameter corners outside the closed forms' safe region.
std::complex<double> oracle_moment(const MomentKey& key, int nodes = 48);

/// Memoized moment lookups for one (ω, h) pair.  The integrator reuses the
/// same keys at every step — only the step-start phase prefactor changes —
/// so values are computed once and shared.  Thread-safe.
class MomentTable {
 public:
  MomentTable(double omega, double h);

  std::complex<double> univariate(int k, long n1) const;
  std::complex<double> bivariate(const MonomialIndex& mono, long n1, long n2) const;
  std::complex<double> trivariate(const MonomialIndex& mono, long n1, long n2,
                                  long n3) const;
  std::complex<double> resonant_pair(const MonomialIndex& mono, long n) const;

  double omega() const { return omega_; }
  double step() const { return h_; }

 private:
  std::complex<double> lookup(const MomentKey& key) const;

  double omega_, h_;
  mutable std::unordered_map<std::uint64_t, std::complex<double>> cache_;
  mutable std::mutex mutex_;
};

}  // namespace nf3
