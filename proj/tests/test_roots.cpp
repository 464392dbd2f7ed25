#include "dhl/errors.hpp"
#include "dhl/random.hpp"
#include "dhl/renorm.hpp"
#include "dhl/roots.hpp"
#include "dhl/slice_engine.hpp"

#include <doctest.h>

#include <numbers>

using namespace dhl;

TEST_CASE("aberth on small polynomials") {
  const auto q = aberth_solve(CPoly{1.0, 1.0, 1.0});  // s^2 + 2ts + 1 at t = 0.5
  REQUIRE(q.roots.size() == 2);
  const std::vector<Complex> want{Complex(-0.5, std::sqrt(0.75)), Complex(-0.5, -std::sqrt(0.75))};
  CHECK(hausdorff_distance(q.roots, want) < 1e-14);
  for (const Complex r : q.roots) CHECK(std::abs(std::abs(r) - 1.0) < 1e-15);

  const auto d = aberth_solve(CPoly{-1.0, 0.0, 1.0});
  CHECK(hausdorff_distance(d.roots, {1.0, -1.0}) < 1e-15);
}

TEST_CASE("aberth recovers constructed roots at degree 128") {
  auto rng = stream_rng(21, 0);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> truth;
  // jittered roots of unity: well conditioned, unlike roots spread over the disk
  for (int k = 0; k < 128; ++k)
    truth.push_back(std::polar(1.0 + 0.05 * u(rng), 2 * std::numbers::pi * (k + 0.3 * u(rng)) / 128));
  const auto rep = aberth_solve(poly_from_roots(truth));
  CHECK(hausdorff_distance(rep.roots, truth) < 1e-8);
}

TEST_CASE("clusters keep multiplicity") {
  const auto rep = aberth_solve(poly_from_roots({1.0, 1.0, 1.0, Complex(0, 2)}));
  const auto cl = cluster_roots(rep.roots, 1e-4);
  REQUIRE(cl.size() == 2);
  int m3 = 0;
  for (const auto& c : cl) m3 += c.multiplicity == 3;
  CHECK(m3 == 1);
}

TEST_CASE("lee-yang zeros") {
  const ZerosResult z0 = lee_yang_zeros(0.5, 0);
  CHECK(hausdorff_distance(z0.measure.points, {Complex(-0.5, std::sqrt(0.75)), Complex(-0.5, -std::sqrt(0.75))}) < 1e-14);
  for (int k = 1; k <= 9; ++k) {
    const ZerosResult z = lee_yang_zeros(0.1 * k, 2);
    CHECK(z.measure.size() == 32);
    CHECK(z.maxCircleDeviation < 1e-8);
  }
  // outside the ferromagnetic range: still returns all roots plus the deviation
  const ZerosResult off = lee_yang_zeros(1.5, 2);
  CHECK(off.measure.size() == 32);
  CHECK(std::isfinite(off.maxCircleDeviation));
}

TEST_CASE("fisher zeros cross-check") {
  const ZerosResult f0 = fisher_zeros(0);
  REQUIRE(f0.measure.size() == 1);
  CHECK(std::abs(f0.measure.points[0] + 1.0) < 1e-15);

  const ZerosResult f1 = fisher_zeros(1);
  CHECK(hausdorff_distance(f1.measure.points, fisher_1d_preimages(-1.0)) < 1e-8);

  const ZerosResult f3 = fisher_zeros(3);
  CHECK(f3.measure.size() == 64);
  CHECK(f3.crossCheck < 1e-6);
}

TEST_CASE("slice zeros") {
  // L0: zhat = 1 + s^(4^n), roots are 4^n-th roots of -1
  const auto l0 = SliceSpec::line(fixed::e(), fixed::e_prime());
  const ZerosResult z = slice_zeros(l0, 2);
  REQUIRE(z.measure.size() == 16);
  for (const Complex r : z.measure.points) CHECK(std::abs(std::pow(r, 16) + 1.0) < 1e-12);

  auto rng = stream_rng(22, 0);
  const auto line = SliceSpec::line(ProjPoint::from_raw(random_unit_vec3(rng)), ProjPoint::from_raw(random_unit_vec3(rng)));
  const ZerosResult r1 = slice_zeros(line, 1);
  CHECK(r1.measure.size() == 4);
  CHECK(r1.report.maxResidual < 1e-9);
}

TEST_CASE("double-double roots at level 5") {
  const ZerosResult z = lee_yang_zeros(0.3, 5, Precision::DoubleDouble);
  CHECK(z.measure.size() == 2048);
  CHECK(z.maxCircleDeviation < 1e-6);
}

TEST_CASE("logarithmic potential of a measure") {
  EmpiricalMeasure m;
  m.points = {0.0};
  m.weights = {1.0};
  CHECK(potential_of_measure(m, std::numbers::e) == doctest::Approx(1.0));
  CHECK_THROWS_AS(potential_of_measure(m, 0.0), Error);

  EmpiricalMeasure pm;
  pm.points = {1.0, -1.0};
  pm.weights = {0.5, 0.5};
  CHECK(std::abs(potential_of_measure(pm, 0.0)) < 1e-15);

  EmpiricalMeasure u;
  const int n = 16;
  for (int k = 0; k < n; ++k) {
    u.points.push_back(std::polar(1.0, 2 * std::numbers::pi * k / n));
    u.weights.push_back(1.0 / n);
  }
  const Complex s(1.5, 0.7);
  CHECK(std::abs(potential_of_measure(u, s) - std::log(std::abs(s))) < 2.0 * std::pow(std::abs(s), -n));
}

TEST_CASE("angular histogram") {
  const DensityTable h0 = angular_histogram(lee_yang_zeros(0.5, 0).measure, 63);
  int hit = 0;
  double massLo = 0.0, massHi = 0.0;
  for (std::size_t k = 0; k < h0.mass.size(); ++k) {
    if (h0.mass[k] > 0) ++hit;
    (h0.binCenter[k] < std::numbers::pi ? massLo : massHi) += h0.mass[k];
  }
  CHECK(hit == 2);
  CHECK(std::abs(massLo - massHi) < 1e-15);

  EmpiricalMeasure u;
  for (int k = 0; k < 64; ++k) {
    u.points.push_back(std::polar(1.0, 2 * std::numbers::pi * (k + 0.5) / 64));
    u.weights.push_back(1.0 / 64);
  }
  const DensityTable flat = angular_histogram(u, 16);
  for (const double m : flat.mass) CHECK(m == doctest::Approx(1.0 / 16));

  // palindromic zhat: histogram symmetric under phi -> -phi
  const DensityTable h3 = angular_histogram(lee_yang_zeros(0.5, 3).measure, 63);
  const std::size_t b = h3.mass.size();
  double asym = 0.0;
  for (std::size_t k = 0; k < b; ++k) asym = std::max(asym, std::abs(h3.mass[k] - h3.mass[b - 1 - k]));
  CHECK(asym < 1e-10);
  CHECK(h3.outsideAnnulus == 0);
}
