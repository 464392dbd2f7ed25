#pragma once

#include <cmath>
#include <complex>

namespace dhl {

// unevaluated sum hi + lo, |lo| <= ulp(hi)/2
struct DoubleDouble {
  double hi = 0.0, lo = 0.0;

  DoubleDouble() = default;
  DoubleDouble(double x) : hi(x), lo(0.0) {}  // NOLINT implicit on purpose
  DoubleDouble(double h, double l) : hi(h), lo(l) {}

  double to_double() const { return hi + lo; }
};

namespace dd_detail {
inline DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double e = (a - (s - bb)) + (b - bb);
  return {s, e};
}
inline DoubleDouble quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}
inline DoubleDouble two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}
}  // namespace dd_detail

inline DoubleDouble operator+(DoubleDouble a, DoubleDouble b) {
  auto s = dd_detail::two_sum(a.hi, b.hi);
  auto t = dd_detail::two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = dd_detail::quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return dd_detail::quick_two_sum(s.hi, s.lo);
}
inline DoubleDouble operator-(DoubleDouble a) { return {-a.hi, -a.lo}; }
inline DoubleDouble operator-(DoubleDouble a, DoubleDouble b) { return a + (-b); }
inline DoubleDouble operator*(DoubleDouble a, DoubleDouble b) {
  auto p = dd_detail::two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return dd_detail::quick_two_sum(p.hi, p.lo);
}
inline DoubleDouble ldexp(DoubleDouble a, int e) { return {std::ldexp(a.hi, e), std::ldexp(a.lo, e)}; }

struct DDComplex {
  DoubleDouble re, im;

  DDComplex() = default;
  DDComplex(std::complex<double> z) : re(z.real()), im(z.imag()) {}  // NOLINT
  DDComplex(DoubleDouble r, DoubleDouble i) : re(r), im(i) {}

  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
};

inline DDComplex operator+(const DDComplex& a, const DDComplex& b) { return {a.re + b.re, a.im + b.im}; }
inline DDComplex operator-(const DDComplex& a, const DDComplex& b) { return {a.re - b.re, a.im - b.im}; }
inline DDComplex operator*(const DDComplex& a, const DDComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline DDComplex ldexp(const DDComplex& a, int e) { return {ldexp(a.re, e), ldexp(a.im, e)}; }

// uniform helpers so evaluators can be written once
inline std::complex<double> to_complex(const std::complex<double>& z) { return z; }
inline std::complex<double> to_complex(const DDComplex& z) { return z.to_complex(); }
inline double approx_abs(const std::complex<double>& z) { return std::abs(z); }
inline double approx_abs(const DDComplex& z) { return std::abs(z.to_complex()); }
inline std::complex<double> ldexp(const std::complex<double>& z, int e) {
  return {std::ldexp(z.real(), e), std::ldexp(z.imag(), e)};
}

enum class Precision { Double, DoubleDouble };

}  // namespace dhl
