#include "dhl/errors.hpp"
#include "dhl/geometry.hpp"
#include "dhl/renorm.hpp"

#include <doctest.h>

#include <cmath>

using namespace dhl;

TEST_CASE("normalize") {
  const auto a = normalize(2.0, 0.0, 0.0);
  CHECK(std::abs(a.u() - 1.0) < 1e-15);
  CHECK(std::abs(a.v()) == 0.0);

  const auto b = normalize(1.0, 1.0, 1.0);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(b.coords()[i] - 1.0 / std::sqrt(3.0)) < 1e-15);

  // modulus 5, phase kept out by the real-positive convention on the largest entry
  const auto c = normalize(Complex(3, 4), 0.0, 0.0);
  CHECK(std::abs(c.u() - 1.0) < 1e-15);
  const Vec3 raw = Vec3(Complex(3, 4), 0.0, 0.0) / 5.0;
  CHECK(chordal_dist(c.coords(), raw) < 1e-15);

  CHECK_THROWS_AS(normalize(0.0, 0.0, 0.0), Error);
  try {
    normalize(0.0, 0.0, 0.0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroVector);
  }
}

TEST_CASE("canonical form is scale invariant") {
  const Vec3 x(Complex(0.3, -1.2), Complex(2.0, 0.5), Complex(-0.7, 0.1));
  const Complex lam(-1.7, 3.3);
  const Vec3 a = normalize(x).coords(), b = normalize(lam * x).coords();
  CHECK((a - b).norm() < 1e-15);
  CHECK(a[1].imag() == 0.0);
  CHECK(a[1].real() > 0.0);
}

TEST_CASE("chordal distance") {
  CHECK(chordal_dist(normalize(1.0, 0.0, 0.0), normalize(1.0, 0.0, 0.0)) == 0.0);
  CHECK(chordal_dist(normalize(1.0, 0.0, 0.0), normalize(0.0, 0.0, 1.0)) == doctest::Approx(1.0));
  CHECK(chordal_dist(normalize(1.0, 0.0, 0.0), normalize(1.0, 0.0, 1.0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("rho swaps outer coordinates") {
  const auto p = normalize(Complex(1, 2), 3.0, Complex(-1, 0.5));
  const auto q = p.rho();
  CHECK(chordal_dist(q, normalize(Complex(-1, 0.5), 3.0, Complex(1, 2))) < 1e-15);
  CHECK(chordal_dist(q.rho(), p) < 1e-15);
}

TEST_CASE("psi") {
  // z = 1: [1 : t : 1]
  const Complex t(0.3, 0.2);
  CHECK(chordal_dist(psi({1.0, t}), normalize(1.0, t, 1.0)) < 1e-15);
  // z = i, t = 1 is a-
  CHECK(chordal_dist(psi({Complex(0, 1), 1.0}), fixed::a_minus()) < 1e-15);
  // z -> 1/z swaps U and W
  const Complex z(0.4, -0.9);
  CHECK(chordal_dist(psi({1.0 / z, t}), psi({z, t}).rho()) < 1e-14);
  CHECK_THROWS_AS(psi({0.0, t}), Error);
  CHECK_THROWS_AS(psi({z, 0.0}), Error);
}

TEST_CASE("make_slice") {
  const RationalSlice f = make_slice(SliceSpec::physical_z1_line());
  const Complex s(0.7, -0.2);
  CHECK(chordal_dist(f.eval(s), Vec3(1.0, s, 1.0)) < 1e-15);

  const Complex t(0.5, 0.1), z(1.3, 0.4);
  const RationalSlice ly = make_slice(SliceSpec::physical_t_line(t));
  CHECK(ly.degree() == 2);
  CHECK(chordal_dist(ly.eval(z), psi({z, t}).coords()) < 1e-15);

  const RationalSlice l0 = make_slice(SliceSpec::line(fixed::e(), fixed::e_prime()));
  CHECK(chordal_dist(l0.eval(s), Vec3(1.0, 0.0, s)) < 1e-15);

  CHECK_THROWS_AS(make_slice(SliceSpec::line(fixed::e(), normalize(2.0, 0.0, 0.0))), Error);
}
