#pragma once

#include "dhl/geometry.hpp"

#include <Eigen/Core>

#include <array>
#include <string>
#include <vector>

namespace dhl {

// R^(U,V,W) = ((U^2+V^2)^2, V^2 (U+W)^2, (V^2+W^2)^2)
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 3, 1> mk_hat(const Eigen::MatrixBase<Derived>& x) {
  using S = typename Derived::Scalar;
  const S a = x[0] * x[0] + x[1] * x[1];
  const S b = x[1] * (x[0] + x[2]);
  const S c = x[1] * x[1] + x[2] * x[2];
  return {a * a, b * b, c * c};
}

template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 3, 3> mk_hat_jacobian(const Eigen::MatrixBase<Derived>& x) {
  using S = typename Derived::Scalar;
  const S u = x[0], v = x[1], w = x[2];
  const S a = u * u + v * v, b = u + w, c = v * v + w * w;
  Eigen::Matrix<S, 3, 3> j;
  j << S(4) * a * u, S(4) * a * v, S(0),
       S(2) * v * v * b, S(2) * v * b * b, S(2) * v * v * b,
       S(0), S(4) * c * v, S(4) * c * w;
  return j;
}

// degree-6 homogeneous lift of the physical map in (Z, T, Y) with z = Z/Y, t = T/Y
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 3, 1> phys_hat(const Eigen::MatrixBase<Derived>& x) {
  using S = typename Derived::Scalar;
  const S z2 = x[0] * x[0], t2 = x[1] * x[1], y2 = x[2] * x[2];
  const S zt = z2 + t2, zy = z2 + y2;
  return {z2 * zt * zt, zy * zy * t2, (y2 * y2 + z2 * t2) * zt};
}

struct MapStepResult {
  ProjPoint point;
  double logScale = 0.0;
};

inline constexpr double kIndeterminacyNorm = 1e-14;
inline constexpr double kIndeterminacyRadius = 1e-4;

MapStepResult apply_hat(const ProjPoint& x);
PhysPoint apply_phys(const PhysPoint& p);
Complex fisher_1d(Complex t);
// roots with multiplicity, polished
std::vector<Complex> fisher_1d_preimages(Complex target);

struct TangentJacobian {
  Eigen::Matrix2cd matrix;
  Complex det;
};
TangentJacobian tangent_jacobian(const ProjPoint& x);
// orthonormal basis (columns) of the Hermitian complement of unit x
Eigen::Matrix<Complex, 3, 2> complement_frame(const Vec3& x);

struct InverseFiber {
  std::vector<ProjPoint> points;  // 8 entries, repeated when roots collide
  bool degenerate = false;
  double maxResidual = 0.0;
};
InverseFiber inverse_branches(const ProjPoint& target);

ProjPoint blowup_image(Complex chi);
Complex conic_g_residual(Complex u, Complex w);

namespace fixed {
ProjPoint e();
ProjPoint e_prime();
ProjPoint beta0();
ProjPoint beta1();
ProjPoint a_plus();
ProjPoint a_minus();
ProjPoint zero_point();
}  // namespace fixed

enum class CurveId { L0, L1, L2, L3Plus, L3Minus, L4Plus, L4Minus };

struct CriticalCurve {
  CurveId id;
  std::string name;
  Complex implicit(const Vec3& x) const;
  // affine parametrization
  Vec3 param(Complex s) const;
  // gradient of the implicit equation, used for transverse rays
  Vec3 gradient(const Vec3& x) const;
};
const std::array<CriticalCurve, 7>& critical_curves();

}  // namespace dhl
