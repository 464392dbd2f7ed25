#pragma once

#include "dhl/cpoly.hpp"

#include <Eigen/Core>

#include <complex>

namespace dhl {

using Vec3 = Eigen::Vector3cd;

// Point of CP^2 stored as a unit vector; the largest-modulus coordinate is
// real positive (lowest index wins ties).
class ProjPoint {
 public:
  ProjPoint();  // [1:0:0]
  static ProjPoint from_raw(const Vec3& raw);

  const Vec3& coords() const { return x_; }
  Complex u() const { return x_[0]; }
  Complex v() const { return x_[1]; }
  Complex w() const { return x_[2]; }

  // (U,V,W) -> (W,V,U)
  ProjPoint rho() const;

 private:
  explicit ProjPoint(const Vec3& unit) : x_(unit) {}
  Vec3 x_;
};

ProjPoint normalize(const Vec3& raw);
ProjPoint normalize(Complex u, Complex v, Complex w);

// unit vector with real positive largest coordinate, no ZeroVector check
Vec3 canonical_unit(const Vec3& raw);

template <typename Derived>
double sym_norm(const Eigen::MatrixBase<Derived>& x) {
  // (|u|^2+|w|^2)+|v|^2 so that swapping u,w is bitwise neutral
  return std::sqrt((std::norm(x[0]) + std::norm(x[2])) + std::norm(x[1]));
}

double chordal_dist(const ProjPoint& a, const ProjPoint& b);
// same metric on raw nonzero vectors
double chordal_dist(const Vec3& a, const Vec3& b);

struct PhysPoint {
  Complex z;
  Complex t;
};

// denominator-cleared lift (1, z t, z^2)
Vec3 psi_lift(const PhysPoint& p);
ProjPoint psi(const PhysPoint& p);

struct LinearForm {
  Complex p = 1.0, q = 2.0, r = 1.0;

  static LinearForm y0() { return {}; }
  template <typename Derived>
  typename Derived::Scalar operator()(const Eigen::MatrixBase<Derived>& x) const {
    using S = typename Derived::Scalar;
    return S(p) * x[0] + S(q) * x[1] + S(r) * x[2];
  }
  double norm() const { return std::sqrt(std::norm(p) + std::norm(q) + std::norm(r)); }
};

// s -> (pU(s), pV(s), pW(s)); logScale is log of the dropped projective factor
struct RationalSlice {
  CPoly pU, pV, pW;
  double logScale = 0.0;

  int degree() const;
  Vec3 eval(Complex s) const;
  // value and s-derivative
  std::pair<Vec3, Vec3> eval_with_derivative(Complex s) const;
  // coefficient vector of s^k
  Vec3 coeff(int k) const;
};

struct SliceSpec {
  enum class Kind { Line, PhysicalTLine, PhysicalZ1Line };
  Kind kind = Kind::PhysicalZ1Line;
  ProjPoint x0, d;   // Line
  Complex t = 0.5;   // PhysicalTLine

  static SliceSpec line(const ProjPoint& x0, const ProjPoint& d);
  static SliceSpec physical_t_line(Complex t);
  static SliceSpec physical_z1_line();
};

RationalSlice make_slice(const SliceSpec& spec);

}  // namespace dhl
