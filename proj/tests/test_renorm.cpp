#include "dhl/errors.hpp"
#include "dhl/random.hpp"
#include "dhl/renorm.hpp"

#include <doctest.h>

#include <algorithm>

using namespace dhl;

namespace {
ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;  // sentinel: nothing thrown
}
}  // namespace

TEST_CASE("mk_hat closed form") {
  const Vec3 x(Complex(0.3, 1.0), Complex(-0.5, 0.2), Complex(1.1, -0.4));
  const Vec3 y = mk_hat(x);
  const Complex u = x[0], v = x[1], w = x[2];
  CHECK(std::abs(y[0] - (u * u + v * v) * (u * u + v * v)) < 1e-14);
  CHECK(std::abs(y[1] - v * v * (u + w) * (u + w)) < 1e-14);
  CHECK(std::abs(y[2] - (v * v + w * w) * (v * v + w * w)) < 1e-14);
  // degree 4 homogeneous
  const Complex lam(0.7, -1.3);
  CHECK((mk_hat(Vec3(lam * x)) - std::pow(lam, 4) * y).norm() < 1e-13 * y.norm());
}

TEST_CASE("jacobian against central differences") {
  const Vec3 x(Complex(0.3, 1.0), Complex(-0.5, 0.2), Complex(1.1, -0.4));
  const auto j = mk_hat_jacobian(x);
  const double h = 1e-6;
  for (int k = 0; k < 3; ++k) {
    Vec3 e = Vec3::Zero();
    e[k] = h;
    const Vec3 fd = (mk_hat(Vec3(x + e)) - mk_hat(Vec3(x - e))) / (2 * h);
    CHECK((fd - j.col(k)).norm() < 1e-8);
  }
}

TEST_CASE("apply_hat") {
  const auto r = apply_hat(fixed::e());
  CHECK(chordal_dist(r.point, fixed::e()) == 0.0);
  CHECK(r.logScale == 0.0);

  CHECK(kind_of([] { apply_hat(fixed::a_plus()); }) == ErrorKind::Indeterminate);
  CHECK(kind_of([] { apply_hat(fixed::a_minus()); }) == ErrorKind::Indeterminate);

  // power map on L0
  const Complex xi(0.6, -0.5);
  CHECK(chordal_dist(apply_hat(normalize(1.0, 0.0, xi)).point, normalize(1.0, 0.0, std::pow(xi, 4))) < 1e-15);

  // the origin of the V chart goes to beta0
  CHECK(chordal_dist(apply_hat(normalize(0.0, 1.0, 0.0)).point, fixed::beta0()) < 1e-15);

  for (const auto& p : {fixed::e(), fixed::e_prime(), fixed::beta0(), fixed::beta1()})
    CHECK(chordal_dist(apply_hat(p).point, p) < 1e-15);
}

TEST_CASE("logScale tracks the dropped factor") {
  const Vec3 x(Complex(0.3, 1.0), Complex(-0.5, 0.2), Complex(1.1, -0.4));
  const ProjPoint p = normalize(x);
  const auto r = apply_hat(p);
  // |R^(unit x)| = exp(logScale) for the unit representative
  CHECK(std::abs(std::log(mk_hat(p.coords()).norm()) - r.logScale) < 1e-14);
}

TEST_CASE("apply_phys") {
  const Complex t(0.4, 0.3);
  const auto r = apply_phys({1.0, t});
  CHECK(std::abs(r.z - 1.0) < 1e-15);
  CHECK(std::abs(r.t - fisher_1d(t)) < 1e-15);
  const auto b = apply_phys({1.0, 1.0});
  CHECK(std::abs(b.z - 1.0) < 1e-15);
  CHECK(std::abs(b.t - 1.0) < 1e-15);
  CHECK(kind_of([] { apply_phys({Complex(0, 1), 1.0}); }) == ErrorKind::DomainError);

  auto rng = stream_rng(3, 0);
  double worst = 0.0;
  for (int k = 0; k < 500; ++k) {
    const PhysPoint p{complex_gaussian(rng), complex_gaussian(rng)};
    worst = std::max(worst, chordal_dist(psi(apply_phys(p)), apply_hat(psi(p)).point));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("fisher_1d") {
  CHECK(fisher_1d(0.0) == Complex(0.0));
  CHECK(std::abs(fisher_1d(1.0) - 1.0) < 1e-15);
  CHECK(std::abs(fisher_1d(-1.0) - 1.0) < 1e-15);
  CHECK(kind_of([] { fisher_1d(Complex(0, 1)); }) == ErrorKind::Pole);

  const auto z = fisher_1d_preimages(0.0);
  REQUIRE(z.size() == 2);
  CHECK(z[0] == Complex(0.0));
  CHECK(z[1] == Complex(0.0));

  const auto one = fisher_1d_preimages(1.0);
  auto has = [&](Complex v) {
    return std::any_of(one.begin(), one.end(), [&](Complex r) { return std::abs(r - v) < 1e-7; });
  };
  CHECK(has(1.0));
  CHECK(has(-1.0));

  const auto m = fisher_1d_preimages(-1.0);
  REQUIRE(m.size() == 4);
  for (std::size_t a = 0; a < m.size(); ++a) {
    CHECK(std::abs(fisher_1d(m[a]) + 1.0) < 1e-12);
    for (std::size_t b = a + 1; b < m.size(); ++b) CHECK(std::abs(m[a] - m[b]) > 1e-3);
  }
}

TEST_CASE("tangent jacobian on and off the critical locus") {
  // L1 generic
  for (const Complex s : {Complex(0.5, 0.0), Complex(0.3, 0.8), Complex(-1.5, 0.2)}) {
    const Vec3 x(1.0, s, s * s);
    CHECK(std::abs(tangent_jacobian(normalize(x)).det) < 1e-8);
  }
  // beta1 = [1:1:1] satisfies UW = V^2, so it lies on L1 and the determinant vanishes
  CHECK(std::abs(tangent_jacobian(fixed::beta1()).det) < 1e-12);

  auto rng = stream_rng(5, 0);
  for (int k = 0; k < 50; ++k) {
    const ProjPoint p = ProjPoint::from_raw(random_unit_vec3(rng));
    const double d = std::abs(tangent_jacobian(p).det);
    CHECK(d > 0.0);
    CHECK(std::isfinite(d));
  }
}

TEST_CASE("tangent jacobian is rho equivariant") {
  const ProjPoint p = normalize(Complex(0.3, 1.0), Complex(-0.5, 0.2), Complex(1.1, -0.4));
  CHECK(std::abs(std::abs(tangent_jacobian(p).det) - std::abs(tangent_jacobian(p.rho()).det)) < 1e-13);
}

TEST_CASE("inverse branches") {
  auto rng = stream_rng(8, 0);
  for (int k = 0; k < 50; ++k) {
    const ProjPoint x = ProjPoint::from_raw(random_unit_vec3(rng));
    const ProjPoint target = apply_hat(x).point;
    const InverseFiber f = inverse_branches(target);
    REQUIRE(f.points.size() == 8);
    CHECK_FALSE(f.degenerate);
    double nearest = 1.0;
    for (const auto& p : f.points) {
      nearest = std::min(nearest, chordal_dist(p, x));
      CHECK(chordal_dist(apply_hat(p).point, target) < 1e-9);
    }
    CHECK(nearest < 1e-9);
    for (std::size_t a = 0; a < 8; ++a)
      for (std::size_t b = a + 1; b < 8; ++b) CHECK(chordal_dist(f.points[a], f.points[b]) > 1e-7);
  }
  CHECK(kind_of([] { inverse_branches(normalize(1.0, 0.0, 1.0)); }) == ErrorKind::InfiniteFiber);
}

TEST_CASE("blow-up of the indeterminacy points lands on the conic") {
  auto chart = [](const ProjPoint& p) { return std::pair{p.u() / p.v(), p.w() / p.v()}; };
  auto [u0, w0] = chart(blowup_image(0.0));
  CHECK(std::abs(u0 + 4.0) < 1e-14);
  CHECK(std::abs(w0) < 1e-14);
  CHECK(std::abs(conic_g_residual(u0, w0)) < 1e-13);
  auto [u1, w1] = chart(blowup_image(1.0));
  CHECK(std::abs(u1 + 1.0) < 1e-14);
  CHECK(std::abs(w1 + 1.0) < 1e-14);

  auto rng = stream_rng(9, 0);
  for (int k = 0; k < 100; ++k) {
    const Complex chi = complex_gaussian(rng);
    auto [u, w] = chart(blowup_image(chi));
    CHECK(std::abs(conic_g_residual(u, w)) < 1e-10 * std::max(1.0, std::norm(u) + std::norm(w)));
  }
}

TEST_CASE("critical curves") {
  const auto& cs = critical_curves();
  REQUIRE(cs.size() == 7);
  for (const auto& c : cs)
    for (const Complex s : {Complex(0.4, 0.1), Complex(-1.3, 0.7)}) {
      const Vec3 x = c.param(s);
      CHECK(std::abs(c.implicit(x)) < 1e-14);
      CHECK(std::abs(tangent_jacobian(normalize(x)).det) < 1e-8);
    }
}
