#include "dhl/geometry.hpp"

#include "dhl/errors.hpp"

#include <algorithm>
#include <cmath>

namespace dhl {

Vec3 canonical_unit(const Vec3& raw) {
  int k = 0;
  double best = std::norm(raw[0]);
  for (int i = 1; i < 3; ++i) {
    const double m = std::norm(raw[i]);
    if (m > best) {
      best = m;
      k = i;
    }
  }
  // rescale first so tiny or huge inputs don't under/overflow the norm
  int e = 0;
  std::frexp(std::sqrt(best), &e);
  Vec3 x = raw * std::ldexp(1.0, -e);
  const Complex phase = std::conj(x[k]) / std::abs(x[k]);
  x *= phase;
  x[k] = Complex(std::abs(x[k]), 0.0);
  x /= sym_norm(x);
  return x;
}

ProjPoint::ProjPoint() : x_(1.0, 0.0, 0.0) {}

ProjPoint ProjPoint::from_raw(const Vec3& raw) {
  if (!raw.allFinite()) throw Error(ErrorKind::DomainError, "non-finite coordinates");
  if ((raw.array() == Complex(0.0)).all()) throw Error(ErrorKind::ZeroVector, "normalize of (0,0,0)");
  return ProjPoint(canonical_unit(raw));
}

ProjPoint ProjPoint::rho() const { return from_raw(Vec3(x_[2], x_[1], x_[0])); }

ProjPoint normalize(const Vec3& raw) { return ProjPoint::from_raw(raw); }

ProjPoint normalize(Complex u, Complex v, Complex w) { return ProjPoint::from_raw(Vec3(u, v, w)); }

double chordal_dist(const Vec3& a, const Vec3& b) {
  const Vec3 ua = a / sym_norm(a);
  const Vec3 ub = b / sym_norm(b);
  const Complex ip = ua.dot(ub);  // conjugates ua
  const double d = (ub - ip * ua).norm();
  return std::min(1.0, d);
}

double chordal_dist(const ProjPoint& a, const ProjPoint& b) { return chordal_dist(a.coords(), b.coords()); }

Vec3 psi_lift(const PhysPoint& p) {
  if (p.z == Complex(0.0) || p.t == Complex(0.0)) throw Error(ErrorKind::DomainError, "psi needs z != 0 and t != 0");
  return Vec3(1.0, p.z * p.t, p.z * p.z);
}

ProjPoint psi(const PhysPoint& p) { return normalize(psi_lift(p)); }

int RationalSlice::degree() const { return std::max({pU.degree(), pV.degree(), pW.degree()}); }

Vec3 RationalSlice::eval(Complex s) const { return Vec3(pU(s), pV(s), pW(s)); }

std::pair<Vec3, Vec3> RationalSlice::eval_with_derivative(Complex s) const {
  auto [u, du] = pU.eval_with_derivative(s);
  auto [v, dv] = pV.eval_with_derivative(s);
  auto [w, dw] = pW.eval_with_derivative(s);
  return {Vec3(u, v, w), Vec3(du, dv, dw)};
}

Vec3 RationalSlice::coeff(int k) const {
  auto at = [k](const CPoly& p) { return k <= p.degree() ? p[k] : Complex(0.0); };
  return Vec3(at(pU), at(pV), at(pW));
}

SliceSpec SliceSpec::line(const ProjPoint& x0, const ProjPoint& d) {
  SliceSpec s;
  s.kind = Kind::Line;
  s.x0 = x0;
  s.d = d;
  return s;
}

SliceSpec SliceSpec::physical_t_line(Complex t) {
  SliceSpec s;
  s.kind = Kind::PhysicalTLine;
  s.t = t;
  return s;
}

SliceSpec SliceSpec::physical_z1_line() { return SliceSpec{}; }

RationalSlice make_slice(const SliceSpec& spec) {
  RationalSlice sl;
  switch (spec.kind) {
    case SliceSpec::Kind::Line: {
      if (chordal_dist(spec.x0, spec.d) < 1e-12) throw Error(ErrorKind::DegenerateSlice, "line endpoints coincide");
      const Vec3& a = spec.x0.coords();
      const Vec3& b = spec.d.coords();
      auto lin = [](Complex c0, Complex c1) {
        Eigen::VectorXcd c(2);
        c << c0, c1;
        return CPoly(c, true);
      };
      sl.pU = lin(a[0], b[0]);
      sl.pV = lin(a[1], b[1]);
      sl.pW = lin(a[2], b[2]);
      break;
    }
    case SliceSpec::Kind::PhysicalTLine: {
      Eigen::VectorXcd u(3), v(3), w(3);
      u << 1.0, 0.0, 0.0;
      v << 0.0, spec.t, 0.0;
      w << 0.0, 0.0, 1.0;
      sl.pU = CPoly(u, true);
      sl.pV = CPoly(v, true);
      sl.pW = CPoly(w, true);
      break;
    }
    case SliceSpec::Kind::PhysicalZ1Line: {
      Eigen::VectorXcd u(2), v(2);
      u << 1.0, 0.0;
      v << 0.0, 1.0;
      sl.pU = CPoly(u, true);
      sl.pV = CPoly(v, true);
      sl.pW = CPoly(u, true);
      break;
    }
  }
  return sl;
}

}  // namespace dhl
