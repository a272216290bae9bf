#pragma once

#include <cmath>
#include <complex>

// Compensated ("double-double") arithmetic: an unevaluated sum of two doubles
// giving ~31 significant digits.  The oscillatory moment recurrences suffer
// large intermediate cancellation (alternating Taylor series, iterated
// integration-by-parts chains), so all coefficient arithmetic there runs in
// this type and is rounded to double only at the very end.
//
// The error-free transforms below are the classic Dekker/Knuth constructions;
// they require strict IEEE double arithmetic (no -ffast-math).

namespace nf3::detail {

struct dd {
  double hi = 0.0;
  double lo = 0.0;

  dd() = default;
  constexpr dd(double h) : hi(h), lo(0.0) {}
  constexpr dd(double h, double l) : hi(h), lo(l) {}
};

inline dd two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

// Requires |a| >= |b| (or a == 0).
inline dd quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline dd operator+(dd a, dd b) {
  const dd s = two_sum(a.hi, b.hi);
  return quick_two_sum(s.hi, s.lo + a.lo + b.lo);
}

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }
inline dd operator-(dd a, dd b) { return a + (-b); }

inline dd operator*(dd a, dd b) {
  const dd p = two_prod(a.hi, b.hi);
  return quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline dd operator*(dd a, double b) {
  const dd p = two_prod(a.hi, b);
  return quick_two_sum(p.hi, p.lo + a.lo * b);
}

inline dd operator/(dd a, dd b) {
  const double q1 = a.hi / b.hi;
  dd r = a - b * q1;
  const double q2 = r.hi / b.hi;
  r = r - b * q2;
  const double q3 = r.hi / b.hi;
  return quick_two_sum(q1, q2) + dd(q3);
}

inline dd operator/(dd a, double b) { return a / dd(b); }

inline double to_double(dd a) { return a.hi + a.lo; }
inline double abs_est(dd a) { return std::abs(a.hi); }

// Complex double-double.
struct ddc {
  dd re, im;

  ddc() = default;
  ddc(dd r, dd i) : re(r), im(i) {}
  ddc(double r, double i = 0.0) : re(r), im(i) {}
  ddc(std::complex<double> z) : re(z.real()), im(z.imag()) {}
};

inline ddc operator+(ddc a, ddc b) { return {a.re + b.re, a.im + b.im}; }
inline ddc operator-(ddc a, ddc b) { return {a.re - b.re, a.im - b.im}; }
inline ddc operator-(ddc a) { return {-a.re, -a.im}; }

inline ddc operator*(ddc a, ddc b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline ddc operator*(ddc a, dd b) { return {a.re * b, a.im * b}; }
inline ddc operator*(ddc a, double b) { return {a.re * b, a.im * b}; }

// Multiplication by i and by a purely real scalar cover every division the
// moment engine needs: 1/(i a) = -i/a for real a.
inline ddc mul_i(ddc a) { return {-a.im, a.re}; }
inline ddc operator/(ddc a, dd b) { return {a.re / b, a.im / b}; }
inline ddc operator/(ddc a, double b) { return {a.re / b, a.im / b}; }

inline std::complex<double> to_complex(ddc a) {
  return {to_double(a.re), to_double(a.im)};
}
inline double abs_est(ddc a) { return std::hypot(a.re.hi, a.im.hi); }

}  // namespace nf3::detail
