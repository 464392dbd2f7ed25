#include "dhl/renorm.hpp"

#include "dhl/errors.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace dhl {

namespace {
const Complex I(0.0, 1.0);

bool near_indeterminacy(const Vec3& x) {
  return chordal_dist(x, fixed::a_plus().coords()) < kIndeterminacyRadius ||
         chordal_dist(x, fixed::a_minus().coords()) < kIndeterminacyRadius;
}

void guard_norm(const Vec3& x, double n) {
  if (n >= kIndeterminacyNorm && std::isfinite(n)) return;
  if (!std::isfinite(n)) throw Error(ErrorKind::DomainError, "non-finite image");
  if (near_indeterminacy(x)) throw Error(ErrorKind::Indeterminate, "R^ vanishes at a+/a-");
  throw Error(ErrorKind::NumericalUnderflow, "|R^(X)| below guard away from a+/a-");
}
}  // namespace

namespace fixed {
ProjPoint e() { return normalize(1.0, 0.0, 0.0); }
ProjPoint e_prime() { return normalize(0.0, 0.0, 1.0); }
ProjPoint beta0() { return normalize(1.0, 0.0, 1.0); }
ProjPoint beta1() { return normalize(1.0, 1.0, 1.0); }
ProjPoint a_plus() { return normalize(I, 1.0, -I); }
ProjPoint a_minus() { return normalize(-I, 1.0, I); }
ProjPoint zero_point() { return normalize(0.0, 1.0, 0.0); }
}  // namespace fixed

MapStepResult apply_hat(const ProjPoint& x) {
  const Vec3 y = mk_hat(x.coords());
  const double n = sym_norm(y);
  guard_norm(x.coords(), n);
  return {normalize(y), std::log(n)};
}

PhysPoint apply_phys(const PhysPoint& p) {
  const Complex z2 = p.z * p.z, t2 = p.t * p.t;
  const Complex d1 = 1.0 + z2 * t2;
  const Complex d2 = z2 + t2;
  if (d1 == Complex(0.0)) throw Error(ErrorKind::DomainError, "vanishing denominator 1 + z^2 t^2");
  if (d2 == Complex(0.0)) throw Error(ErrorKind::DomainError, "vanishing denominator z^2 + t^2");
  const Complex zp = z2 * d2 / d1;
  const Complex a = z2 + 1.0;
  const Complex tp = a * a * t2 / (d1 * d2);
  return {zp, tp};
}

Complex fisher_1d(Complex t) {
  const Complex d = t * t + 1.0;
  if (d == Complex(0.0)) throw Error(ErrorKind::Pole, "fisher_1d pole at t = +-i");
  const Complex g = 2.0 * t / d;
  return g * g;
}

namespace {
Complex fisher_1d_derivative(Complex t) {
  const Complex d = t * t + 1.0;
  const Complex g = 2.0 * t / d;
  const Complex dg = 2.0 * (1.0 - t * t) / (d * d);
  return 2.0 * g * dg;
}

Complex polish_fisher(Complex t, Complex target) {
  for (int it = 0; it < 4; ++it) {
    const Complex d = t * t + 1.0;
    if (std::abs(d) < 1e-300) break;
    const Complex f = fisher_1d(t) - target;
    const Complex df = fisher_1d_derivative(t);
    if (std::abs(df) < 1e-12 * (1.0 + std::abs(f))) break;  // critical point, leave it
    const Complex tn = t - f / df;
    if (std::abs(tn * tn + 1.0) < 1e-300) break;
    if (std::abs(fisher_1d(tn) - target) >= std::abs(f)) break;
    t = tn;
  }
  return t;
}
}  // namespace

std::vector<Complex> fisher_1d_preimages(Complex target) {
  std::vector<Complex> out;
  const Complex root = std::sqrt(target);
  for (const Complex g : {root, -root}) {
    // g t^2 - 2 t + g = 0, roots are reciprocal
    if (g == Complex(0.0)) {
      out.push_back(0.0);  // the other root sits at the pole t = infinity
      continue;
    }
    const Complex s = std::sqrt(1.0 - g * g);  // principal: |1+s| >= |1-s|
    const Complex t1 = (1.0 + s) / g;
    const Complex t2 = g / (1.0 + s);
    out.push_back(polish_fisher(t1, target));
    out.push_back(polish_fisher(t2, target));
  }
  return out;
}

Eigen::Matrix<Complex, 3, 2> complement_frame(const Vec3& x) {
  int a = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(x[i]) < std::abs(x[a])) a = i;
  Vec3 b1 = -x * std::conj(x[a]);
  b1[a] += 1.0;
  b1.normalize();
  Vec3 b2 = x.cross(b1);  // Eigen conjugates complex cross products
  b2.normalize();
  Eigen::Matrix<Complex, 3, 2> f;
  f.col(0) = b1;
  f.col(1) = b2;
  return f;
}

TangentJacobian tangent_jacobian(const ProjPoint& x) {
  const Vec3& u = x.coords();
  const Vec3 y = mk_hat(u);
  const double n = sym_norm(y);
  guard_norm(u, n);
  const Eigen::Matrix3cd j = mk_hat_jacobian(u);
  const auto bx = complement_frame(u);
  const auto by = complement_frame(y / n);
  TangentJacobian out;
  out.matrix = by.adjoint() * j * bx / n;
  out.det = out.matrix.determinant();
  return out;
}

namespace {
// one Newton step on the sign-class pencil, in the chart of the largest coordinate
Vec3 polish_branch(const Vec3& x, Complex a, Complex b, Complex c) {
  auto f = [&](const Vec3& p) {
    const Complex s1 = p[0] * p[0] + p[1] * p[1];
    return Eigen::Vector2cd(b * s1 - a * p[1] * (p[0] + p[2]), c * s1 - a * (p[1] * p[1] + p[2] * p[2]));
  };
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(x[i]) > std::abs(x[k])) k = i;
  const Vec3 p = x / x[k];
  Eigen::Matrix<Complex, 2, 3> jf;
  jf << 2.0 * b * p[0] - a * p[1], 2.0 * b * p[1] - a * (p[0] + p[2]), -a * p[1],
        2.0 * c * p[0], 2.0 * c * p[1] - 2.0 * a * p[1], -2.0 * a * p[2];
  Eigen::Matrix2cd jr;
  int col = 0;
  for (int i = 0; i < 3; ++i)
    if (i != k) jr.col(col++) = jf.col(i);
  Eigen::PartialPivLU<Eigen::Matrix2cd> lu(jr);
  if (!(std::abs(lu.determinant()) > 1e-14 * (jr.norm() * jr.norm()))) return x;
  const Eigen::Vector2cd step = lu.solve(f(p));
  Vec3 q = p;
  col = 0;
  for (int i = 0; i < 3; ++i)
    if (i != k) q[i] -= step[col++];
  return q.allFinite() ? q : x;
}
}  // namespace

InverseFiber inverse_branches(const ProjPoint& target) {
  if (chordal_dist(target, fixed::beta0()) < 1e-12)
    throw Error(ErrorKind::InfiniteFiber, "target [1:0:1]: the whole line U = -W maps there");
  const Vec3& t = target.coords();
  const Complex a = std::sqrt(t[0]);
  const Complex sb = std::sqrt(t[1]);
  const Complex sc = std::sqrt(t[2]);
  InverseFiber fib;
  for (const double bs : {1.0, -1.0}) {
    for (const double cs : {1.0, -1.0}) {
      const Complex b = bs * sb, c = cs * sc;
      // (a+r, b, c+r) with r^2 = ac - b^2 maps to (a+c+2r)^2 (A, B, C)
      const Complex r = std::sqrt(a * c - b * b);
      for (const double rs : {1.0, -1.0}) {
        Vec3 x(a + rs * r, b, c + rs * r);
        if (sym_norm(x) < 1e-150) throw Error(ErrorKind::InfiniteFiber, "preimage collapsed to zero vector");
        const double before = chordal_dist(mk_hat(x), t);
        const Vec3 y = polish_branch(x, a, b, c);
        const double after = chordal_dist(mk_hat(Vec3(y)), t);
        if (after <= before) x = y;
        fib.points.push_back(normalize(x));
        fib.maxResidual = std::max(fib.maxResidual, std::min(before, after));
      }
    }
  }
  for (std::size_t i = 0; i < fib.points.size() && !fib.degenerate; ++i)
    for (std::size_t j = i + 1; j < fib.points.size(); ++j)
      if (chordal_dist(fib.points[i], fib.points[j]) < 1e-7) {
        fib.degenerate = true;
        break;
      }
  return fib;
}

ProjPoint blowup_image(Complex chi) {
  if (chi == Complex(-1.0)) throw Error(ErrorKind::DomainError, "chi = -1");
  const Complex q = 2.0 * I / (1.0 + chi);
  const Complex p = -2.0 * I * chi / (1.0 + chi);
  return normalize(q * q, 1.0, p * p);
}

Complex conic_g_residual(Complex u, Complex w) { return (u - w) * (u - w) + 8.0 * (u + w) + 16.0; }

Complex CriticalCurve::implicit(const Vec3& x) const {
  switch (id) {
    case CurveId::L0: return x[1];
    case CurveId::L1: return x[0] * x[2] - x[1] * x[1];
    case CurveId::L2: return x[0] + x[2];
    case CurveId::L3Plus: return x[0] - I * x[1];
    case CurveId::L3Minus: return x[0] + I * x[1];
    case CurveId::L4Plus: return x[2] - I * x[1];
    case CurveId::L4Minus: return x[2] + I * x[1];
  }
  return 0.0;
}

Vec3 CriticalCurve::param(Complex s) const {
  switch (id) {
    case CurveId::L0: return {1.0, 0.0, s};
    case CurveId::L1: return {1.0, s, s * s};
    case CurveId::L2: return {1.0, s, -1.0};
    case CurveId::L3Plus: return {I, 1.0, s};
    case CurveId::L3Minus: return {-I, 1.0, s};
    case CurveId::L4Plus: return {s, 1.0, I};
    case CurveId::L4Minus: return {s, 1.0, -I};
  }
  return {};
}

Vec3 CriticalCurve::gradient(const Vec3& x) const {
  switch (id) {
    case CurveId::L0: return {0.0, 1.0, 0.0};
    case CurveId::L1: return {x[2], -2.0 * x[1], x[0]};
    case CurveId::L2: return {1.0, 0.0, 1.0};
    case CurveId::L3Plus: return {1.0, -I, 0.0};
    case CurveId::L3Minus: return {1.0, I, 0.0};
    case CurveId::L4Plus: return {0.0, -I, 1.0};
    case CurveId::L4Minus: return {0.0, I, 1.0};
  }
  return {};
}

const std::array<CriticalCurve, 7>& critical_curves() {
  static const std::array<CriticalCurve, 7> curves{{
      {CurveId::L0, "L0"},
      {CurveId::L1, "L1"},
      {CurveId::L2, "L2"},
      {CurveId::L3Plus, "L3+"},
      {CurveId::L3Minus, "L3-"},
      {CurveId::L4Plus, "L4+"},
      {CurveId::L4Minus, "L4-"},
  }};
  return curves;
}

}  // namespace dhl
