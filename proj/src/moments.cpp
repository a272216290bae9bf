#include "nf3/moments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "nf3/dd.hpp"
#include "nf3/quadrature.hpp"

// Evaluation strategy.  The iterated simplex integral is processed one level
// at a time.  The running state is a polynomial-with-phases in the current
// variable,
//
//     P(τ) = Σ_j  c_j · τ^{k_j} · e^{i f_j ω τ},    f_j integer,
//
// kept as a map keyed on (k, f) so equal shapes merge.  Advancing a level
// multiplies by τ^{e_ℓ} e^{i n_ℓ ω τ} (degree += e_ℓ, f += n_ℓ, both exact
// integer updates — resonance is a property of the integers, never of
// floating-point phases) and integrates term by term from 0 to the next
// variable:
//
//   f = 0:          τ^k           ↦ τ^{k+1}/(k+1),
//   |fωh| small:    series        Σ_m (ifω)^m /(m!(k+m+1)) · τ^{k+m+1},
//   otherwise:      closed form   e^{ifωτ} Σ_j d_j τ^{k−j}  −  d_k,
//                   d_0 = 1/(ifω),  d_{j+1} = −(k−j) d_j /(ifω).
//
// The closed form cancels catastrophically as |fωh| → 0 (its terms grow like
// k!/|fωh|^k while the value stays ~ h^{k+1}), and the series amplifies like
// e^{|fωh|} when |fωh| is large, so the switch is made per term at
// |fωh| ≤ 1/2 for k ≤ 3 and |fωh| ≤ min(k, 40) for the higher degrees that
// series tails themselves generate.  All coefficient arithmetic runs in
// double-double precision: the worst admissible amplification (~e^40 ≈ 2e17)
// then still leaves ~14 correct digits.  One unreachable corner remains —
// a degree k > 40 facing 40 < |fωh| < 1.1k, where neither expansion is safe —
// and it falls back to the composite-panel quadrature for the whole key.

namespace nf3 {
namespace {

using detail::dd;
using detail::ddc;

struct TermKey {
  int k;
  long f;
  bool operator<(const TermKey& o) const {
    return k != o.k ? k < o.k : f < o.f;
  }
};

using TermMap = std::map<TermKey, ddc>;

void add_term(TermMap& m, int k, long f, const ddc& c) {
  auto [it, fresh] = m.try_emplace(TermKey{k, f}, c);
  if (!fresh) it->second = it->second + c;
}

constexpr int kSeriesCap = 400;

// ∫₀^s τ^k e^{iaτ} dτ as a power series in s; |a·h| is small enough that the
// summand peak |ah|^m/m! stays within the extended-precision budget.
void integrate_series(TermMap& out, const ddc& c, int k, const dd& a,
                      double zmag) {
  ddc p = c;  // c · (ia)^m / m!
  double pmag = 1.0, peak = 1.0;
  for (int m = 0; m <= kSeriesCap; ++m) {
    add_term(out, k + m + 1, 0, p / double(k + m + 1));
    p = mul_i(p * a) / double(m + 1);
    pmag *= zmag / double(m + 1);
    peak = std::max(peak, pmag);
    if (double(m) >= zmag && pmag < 1e-22 * peak) break;
  }
}

ddc div_by_ia(const ddc& x, const dd& a) {
  return (-mul_i(x)) / a;  // x/(ia) = −i·x / a
}

// ∫₀^s τ^k e^{iaτ} dτ = e^{ias} Σ_{j=0}^k d_j s^{k−j} − d_k  (a = fω ≠ 0).
void integrate_closed(TermMap& out, const ddc& c, int k, long f, const dd& a) {
  ddc d = div_by_ia(c, a);
  for (int j = 0; j < k; ++j) {
    add_term(out, k - j, f, d);
    d = div_by_ia(d * double(-(k - j)), a);
  }
  add_term(out, 0, f, d);
  add_term(out, 0, 0, -d);
}

// One simplex level: multiply the running polynomial by τ^e e^{inωτ} and
// integrate from 0 to the enclosing variable.  Returns false when a term
// lands in the unsafe corner and the caller must switch to quadrature.
bool advance_level(TermMap& cur, int e, long n, double omega, double h) {
  TermMap out;
  for (const auto& [key, c] : cur) {
    const int k = key.k + e;
    const long f = key.f + n;
    if (f == 0) {
      add_term(out, k + 1, 0, c / double(k + 1));
      continue;
    }
    const dd a = detail::two_prod(omega, double(f));
    const double z = std::abs(double(f) * omega * h);
    const bool series = (k <= 3) ? (z <= 0.5) : (z <= std::min<double>(k, 40.0));
    if (series) {
      integrate_series(out, c, k, a, z);
    } else if (k > 40 && z < 1.1 * k) {
      return false;
    } else {
      integrate_closed(out, c, k, f, a);
    }
  }
  cur = std::move(out);
  return true;
}

// Evaluate the final polynomial-with-phases at τ = h.  Terms are grouped by
// frequency first so each group's coefficient cancellation happens in
// extended precision before the phase — computed from the error-free product
// ωh — is applied.
std::complex<double> evaluate_at_h(const TermMap& terms, double omega,
                                   double h) {
  int kmax = 0;
  for (const auto& [key, c] : terms) kmax = std::max(kmax, key.k);
  std::vector<dd> hp(static_cast<size_t>(kmax) + 1);
  hp[0] = dd{1.0, 0.0};
  for (int k = 1; k <= kmax; ++k) hp[k] = hp[k - 1] * h;

  std::map<long, ddc> by_freq;
  for (const auto& [key, c] : terms) {
    const ddc v = c * hp[key.k];
    auto [it, fresh] = by_freq.try_emplace(key.f, v);
    if (!fresh) it->second = it->second + v;
  }

  ddc total{};
  for (const auto& [f, s] : by_freq) {
    if (f == 0) {
      total = total + s;
      continue;
    }
    const dd theta = detail::two_prod(omega, h) * double(f);
    const std::complex<double> ph = std::polar(1.0, theta.hi);
    const ddc phase{dd{ph.real(), 0.0}, dd{ph.imag(), 0.0}};
    const ddc tail{dd{1.0, 0.0}, dd{theta.lo, 0.0}};  // e^{iθ_lo} to O(θ_lo²)
    total = total + s * phase * tail;
  }
  return to_complex(total);
}

std::optional<std::complex<double>> closed_form(const MomentKey& key) {
  TermMap cur;
  cur[TermKey{0, 0}] = ddc{dd{1.0, 0.0}, dd{0.0, 0.0}};
  for (int l = 0; l < key.mono.depth; ++l)
    if (!advance_level(cur, key.mono.e[l], key.freq.n[l], key.omega, key.h))
      return std::nullopt;
  return evaluate_at_h(cur, key.omega, key.h);
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

double int_pow(double x, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

MonomialIndex MonomialIndex::uni(int k) {
  require(k >= 0 && k <= 3, "MonomialIndex::uni: degree must be 0..3");
  return {1, {k, 0, 0}};
}

MonomialIndex MonomialIndex::bi(int e1, int e2) {
  require((e1 == 0 || e1 == 1) && (e2 == 0 || e2 == 1),
          "MonomialIndex::bi: exponents must be 0 or 1");
  return {2, {e1, e2, 0}};
}

MonomialIndex MonomialIndex::tri(int e1, int e2, int e3) {
  require((e1 == 0 || e1 == 1) && (e2 == 0 || e2 == 1) && (e3 == 0 || e3 == 1),
          "MonomialIndex::tri: exponents must be 0 or 1");
  require(e1 + e2 + e3 <= 1, "MonomialIndex::tri: at most one variable");
  return {3, {e1, e2, e3}};
}

FrequencyVector FrequencyVector::uni(long n1) {
  require(n1 != 0, "FrequencyVector: entries must be nonzero");
  return {1, {n1, 0, 0}};
}

FrequencyVector FrequencyVector::bi(long n1, long n2) {
  require(n1 != 0 && n2 != 0, "FrequencyVector: entries must be nonzero");
  return {2, {n1, n2, 0}};
}

FrequencyVector FrequencyVector::tri(long n1, long n2, long n3) {
  require(n1 != 0 && n2 != 0 && n3 != 0,
          "FrequencyVector: entries must be nonzero");
  return {3, {n1, n2, n3}};
}

std::complex<double> mu1(int k, double a, double h) {
  require(k >= 0 && k <= 3, "mu1: degree must be 0..3");
  require(h > 0, "mu1: h must be positive");
  if (a == 0.0) return int_pow(h, k + 1) / (k + 1);
  // Reuse the level engine with the rate folded in as ω·1.
  MomentKey key{MonomialIndex::uni(k), FrequencyVector::uni(1), a, h};
  const auto v = closed_form(key);
  return v ? *v : oracle_moment(key, 48);
}

std::complex<double> mu2(const MonomialIndex& mono, const FrequencyVector& n,
                         double omega, double h) {
  require(mono.depth == 2 && n.depth == 2, "mu2: need bivariate mono and freq");
  require(h > 0, "mu2: h must be positive");
  MomentKey key{mono, n, omega, h};
  const auto v = closed_form(key);
  return v ? *v : oracle_moment(key, 48);
}

std::complex<double> mu3(const MonomialIndex& mono, const FrequencyVector& n,
                         double omega, double h) {
  require(mono.depth == 3 && n.depth == 3, "mu3: need trivariate mono and freq");
  require(h > 0, "mu3: h must be positive");
  MomentKey key{mono, n, omega, h};
  const auto v = closed_form(key);
  return v ? *v : oracle_moment(key, 48);
}

std::complex<double> mu2_resonant_pair(const MonomialIndex& mono, long n,
                                       double omega, double h) {
  require(n >= 1, "mu2_resonant_pair: n must be a positive integer");
  return mu2(mono, FrequencyVector::bi(n, -n), omega, h) +
         mu2(mono, FrequencyVector::bi(-n, n), omega, h);
}

std::complex<double> moment(const MomentKey& key) {
  switch (key.mono.depth) {
    case 1:
      return mu1(key.mono.e[0], double(key.freq.n[0]) * key.omega, key.h);
    case 2:
      return mu2(key.mono, key.freq, key.omega, key.h);
    case 3:
      return mu3(key.mono, key.freq, key.omega, key.h);
    default:
      throw std::invalid_argument("moment: depth must be 1..3");
  }
}

std::complex<double> oracle_moment(const MomentKey& key, int nodes) {
  require(nodes >= 32, "oracle_moment: nodes must be >= 32");
  require(key.h > 0, "oracle_moment: h must be positive");
  const int d = key.mono.depth;
  double rate = 0.0;
  for (int l = 0; l < d; ++l)
    rate += std::abs(double(key.freq.n[l])) * std::abs(key.omega);
  const int panels = PanelIntegrator::panels_for_rate(rate, key.h, nodes);
  const PanelIntegrator pi(0.0, key.h, panels, nodes);
  const Eigen::VectorXd& tau = pi.nodes();

  Eigen::VectorXcd cur = Eigen::VectorXcd::Ones(tau.size());
  std::complex<double> result = 0.0;
  for (int l = 0; l < d; ++l) {
    const double a = double(key.freq.n[l]) * key.omega;
    Eigen::VectorXcd w(tau.size());
    for (Eigen::Index i = 0; i < tau.size(); ++i)
      w[i] = int_pow(tau[i], key.mono.e[l]) *
             std::exp(std::complex<double>(0.0, a * tau[i])) * cur[i];
    if (l + 1 < d) {
      cur = pi.prefix(w);
    } else {
      result = pi.integrate(w)(0);
    }
  }
  return result;
}

MomentTable::MomentTable(double omega, double h) : omega_(omega), h_(h) {
  require(h > 0, "MomentTable: h must be positive");
}

namespace {

// Cache key layout: depth(2) | e(2×3) | biased harmonics (16×3).
std::uint64_t encode(const MonomialIndex& mono, const FrequencyVector& freq) {
  std::uint64_t k = static_cast<std::uint64_t>(mono.depth);
  for (int i = 0; i < 3; ++i)
    k = (k << 2) | static_cast<std::uint64_t>(mono.e[i]);
  for (int i = 0; i < 3; ++i) {
    const long biased = freq.n[i] + 32768;
    k = (k << 16) | static_cast<std::uint64_t>(biased & 0xffff);
  }
  return k;
}

}  // namespace

std::complex<double> MomentTable::lookup(const MomentKey& key) const {
  const std::uint64_t code = encode(key.mono, key.freq);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto it = cache_.find(code);
    if (it != cache_.end()) return it->second;
  }
  const std::complex<double> value = moment(key);
  std::lock_guard<std::mutex> lock(mutex_);
  cache_.emplace(code, value);
  return value;
}

std::complex<double> MomentTable::univariate(int k, long n1) const {
  return lookup({MonomialIndex::uni(k), FrequencyVector::uni(n1), omega_, h_});
}

std::complex<double> MomentTable::bivariate(const MonomialIndex& mono, long n1,
                                            long n2) const {
  return lookup({mono, FrequencyVector::bi(n1, n2), omega_, h_});
}

std::complex<double> MomentTable::trivariate(const MonomialIndex& mono, long n1,
                                             long n2, long n3) const {
  return lookup({mono, FrequencyVector::tri(n1, n2, n3), omega_, h_});
}

std::complex<double> MomentTable::resonant_pair(const MonomialIndex& mono,
                                                long n) const {
  return bivariate(mono, n, -n) + bivariate(mono, -n, n);
}

}  // namespace nf3
