#include "dhl/cpoly.hpp"
#include "dhl/random.hpp"

#include <doctest.h>

using namespace dhl;

TEST_CASE("products") {
  const CPoly a{1.0, 1.0}, b{1.0, -1.0};
  const CPoly p = poly_mul(a, b);
  REQUIRE(p.degree() == 2);
  CHECK(std::abs(p[0] - 1.0) < 1e-15);
  CHECK(std::abs(p[1]) < 1e-15);
  CHECK(std::abs(p[2] + 1.0) < 1e-15);

  const CPoly one{1.0};
  const CPoly q = poly_mul(CPoly{1.0, 2.0, 1.0}, one);
  CHECK(std::abs(q[1] - 2.0) < 1e-15);
}

TEST_CASE("fft product matches schoolbook at degree 512") {
  auto rng = stream_rng(11, 0);
  Eigen::VectorXcd ca(513), cb(513);
  for (int k = 0; k <= 512; ++k) ca[k] = complex_gaussian(rng), cb[k] = complex_gaussian(rng);
  const CPoly a(ca), b(cb);
  const CPoly f = poly_mul_fft(a, b), s = poly_mul_schoolbook(a, b);
  REQUIRE(f.degree() == 1024);
  CHECK((f.coeffs() - s.coeffs()).norm() / s.norm() < 1e-10);
  CHECK((poly_mul(a, b).coeffs() - s.coeffs()).norm() / s.norm() < 1e-10);
}

TEST_CASE("evaluation") {
  const CPoly p = poly_from_roots({1.0, -2.0, Complex(0, 1)});
  CHECK(std::abs(p(1.0)) < 1e-15);
  CHECK(std::abs(p(Complex(0, 1))) < 1e-15);
  const auto [v, d] = p.eval_with_derivative(2.0);
  // p = (s-1)(s+2)(s-i): p(2) = 4(2-i), p'(2) = 4(2-i)(1 + 1/4 + 1/(2-i))
  CHECK(std::abs(v - 4.0 * Complex(2, -1)) < 1e-13);
  CHECK(std::abs(d - 4.0 * Complex(2, -1) * (1.25 + 1.0 / Complex(2, -1))) < 1e-13);
  // newton ratio agrees at large |s|
  const Complex s(1e3, 2e2);
  const auto [vs, ds] = p.eval_with_derivative(s);
  CHECK(std::abs(p.newton_ratio(s) - vs / ds) < 1e-10 * std::abs(vs / ds));
  CHECK(p.abs_eval(1.0) >= std::abs(p(1.0)));
}

TEST_CASE("padding and effective degree") {
  const CPoly p(Eigen::VectorXcd::Map(std::vector<Complex>{1.0, 2.0, 0.0}.data(), 3), true);
  CHECK(p.degree() == 2);
  CHECK(p.padded());
  CHECK(p.effective_degree() == 1);
  const CPoly q(Eigen::VectorXcd::Map(std::vector<Complex>{1.0, 2.0, 0.0}.data(), 3));
  CHECK(q.degree() == 1);
}
