#pragma once

#include "dhl/double_double.hpp"
#include "dhl/geometry.hpp"
#include "dhl/renorm.hpp"

#include <array>
#include <cmath>

namespace dhl {

inline constexpr int kMaxLevel = 6;

struct PartitionSlice {
  int n = 0;
  RationalSlice slice;
  CPoly zhat;  // pU + 2 pV + pW
  double logScale = 0.0;
};

RationalSlice advance_slice(const RationalSlice& sl);
PartitionSlice partition_slice(const RationalSlice& initial, int n, int maxLevel = kMaxLevel);
PartitionSlice partition_slice(const SliceSpec& spec, int n, int maxLevel = kMaxLevel);

// brute-force spin sum on the level-n diamond graph, cleared by z^|E| t^(|E|/2)
Complex gibbs_oracle(int n, Complex z, Complex t);

// log|Y0(R^n(1, zt, z^2))| by pointwise iteration
double eval_logZ(Complex z, Complex t, int n);

// true value = value * exp(logScale)
struct ScaledValue {
  Complex value;
  double logScale = 0.0;
  double log_abs() const { return std::log(std::abs(value)) + logScale; }
};

// Y(R^n(x)) for a raw vector, rescaled each step
ScaledValue eval_form_orbit(const Vec3& x, int n, const LinearForm& y = LinearForm::y0());

struct SliceJet {
  Complex value, derivative;
  double logScale = 0.0;  // shared by value and derivative
  bool vanished = false;  // orbit hit the zero vector
};

// Y(R^n(slice(s))) and its s-derivative, evaluated in scalar type C
template <typename C>
SliceJet eval_slice_jet(const RationalSlice& sl, int n, const LinearForm& y, Complex s) {
  const CPoly* comps[3] = {&sl.pU, &sl.pV, &sl.pW};
  std::array<C, 3> x, dx;
  const C cs(s);
  for (int i = 0; i < 3; ++i) {
    const auto& c = comps[i]->coeffs();
    C p(Complex(0.0)), dp(Complex(0.0));
    for (Eigen::Index k = c.size() - 1; k >= 0; --k) {
      dp = dp * cs + p;
      p = p * cs + C(c[k]);
    }
    x[i] = p;
    dx[i] = dp;
  }
  const C two(Complex(2.0));
  double log2s = 0.0;
  auto rescale = [&]() -> bool {
    double m = 0.0;
    for (int i = 0; i < 3; ++i) m = std::max(m, approx_abs(x[i]));
    if (!(m > 0.0) || !std::isfinite(m)) return false;
    const int e = std::ilogb(m);
    for (int i = 0; i < 3; ++i) {
      x[i] = ldexp(x[i], -e);
      dx[i] = ldexp(dx[i], -e);
    }
    log2s += e;
    return true;
  };
  SliceJet out;
  if (!rescale()) {
    out.vanished = true;
    return out;
  }
  for (int k = 0; k < n; ++k) {
    const C a = x[0] * x[0] + x[1] * x[1];
    const C b = x[1] * (x[0] + x[2]);
    const C c = x[1] * x[1] + x[2] * x[2];
    const C da = two * (x[0] * dx[0] + x[1] * dx[1]);
    const C db = dx[1] * (x[0] + x[2]) + x[1] * (dx[0] + dx[2]);
    const C dc = two * (x[1] * dx[1] + x[2] * dx[2]);
    x = {a * a, b * b, c * c};
    dx = {two * a * da, two * b * db, two * c * dc};
    log2s *= 4.0;
    if (!rescale()) {
      out.vanished = true;
      return out;
    }
  }
  const C v = C(y.p) * x[0] + C(y.q) * x[1] + C(y.r) * x[2];
  const C dv = C(y.p) * dx[0] + C(y.q) * dx[1] + C(y.r) * dx[2];
  out.value = to_complex(v);
  out.derivative = to_complex(dv);
  out.logScale = log2s * std::log(2.0);
  return out;
}

SliceJet eval_slice_jet(const RationalSlice& sl, int n, const LinearForm& y, Complex s, Precision prec);

}  // namespace dhl
