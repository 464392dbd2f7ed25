#include "dhl/errors.hpp"
#include "dhl/random.hpp"
#include "dhl/renorm.hpp"
#include "dhl/slice_engine.hpp"

#include <doctest.h>

#include <numbers>

using namespace dhl;

namespace {
double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("advance on L0 is the power map") {
  const RationalSlice l0 = make_slice(SliceSpec::line(fixed::e(), fixed::e_prime()));
  const RationalSlice a = advance_slice(l0);
  REQUIRE(a.degree() == 4);
  const Vec3 c0 = a.coeff(0), c4 = a.coeff(4);
  CHECK(std::abs(c0[0]) > 0.0);
  CHECK(std::abs(c4[2] / c0[0] - 1.0) < 1e-15);
  CHECK(a.pV.max_abs() == 0.0);
  for (int k = 1; k < 4; ++k) CHECK(a.coeff(k).norm() < 1e-15 * c0.norm());
}

TEST_CASE("Fisher line stays on U = W") {
  const RationalSlice f = advance_slice(make_slice(SliceSpec::physical_z1_line()));
  REQUIRE(f.degree() == 4);
  CHECK((f.pU.coeffs() - f.pW.coeffs()).norm() == 0.0);
}

TEST_CASE("level zero partition polynomials") {
  const Complex t(0.5, 0.0);
  const PartitionSlice p0 = partition_slice(SliceSpec::physical_t_line(t), 0);
  REQUIRE(p0.zhat.degree() == 2);
  const double sc = std::exp(p0.logScale);
  CHECK(std::abs(p0.zhat[0] * sc - 1.0) < 1e-15);
  CHECK(std::abs(p0.zhat[1] * sc - 2.0 * t) < 1e-15);
  CHECK(std::abs(p0.zhat[2] * sc - 1.0) < 1e-15);

  const PartitionSlice f0 = partition_slice(SliceSpec::physical_z1_line(), 0);
  REQUIRE(f0.zhat.degree() == 1);
  CHECK(std::abs(f0.zhat[0] / f0.zhat[1] - 1.0) < 1e-15);  // 2 + 2s, root -1
}

TEST_CASE("degree law") {
  // ends of zhat follow the fixed points: [1:0:0] at s = 0 and s = inf on a
  // t-line, [1:0:1] on the Fisher line, so lead * e^logScale is 1 and 2
  for (int n = 0; n <= 5; ++n) {
    const PartitionSlice ly = partition_slice(SliceSpec::physical_t_line(0.5), n);
    CHECK(ly.zhat.degree() == 2 * (1 << (2 * n)));
    CHECK(std::abs(std::log(std::abs(ly.zhat.leading())) + ly.logScale) < 1e-12);
    CHECK(std::abs(std::log(std::abs(ly.zhat[0])) + ly.logScale) < 1e-12);
    const PartitionSlice f = partition_slice(SliceSpec::physical_z1_line(), n);
    CHECK(f.zhat.degree() == (1 << (2 * n)));
    CHECK(std::abs(std::log(std::abs(f.zhat.leading())) + f.logScale - std::log(2.0)) < 1e-12);
    // relative to the largest coefficient the ends collapse fast
    if (n <= 2) CHECK(std::abs(ly.zhat.leading()) > 1e-12 * ly.zhat.max_abs());
  }
  const PartitionSlice deep = partition_slice(SliceSpec::physical_t_line(0.5), 5);
  CHECK(std::abs(deep.zhat.leading()) < 1e-60 * deep.zhat.max_abs());
  CHECK_THROWS_AS(partition_slice(SliceSpec::physical_z1_line(), kMaxLevel + 1), Error);
}

TEST_CASE("gibbs oracle") {
  const Complex z(0.7, 0.3), t(0.4, -0.2);
  CHECK(rel(gibbs_oracle(0, z, t), 1.0 + 2.0 * z * t + z * z) < 1e-15);
  CHECK(std::abs(gibbs_oracle(1, 1.0, 1.0) - 16.0) < 1e-13);
  CHECK_THROWS_AS(gibbs_oracle(3, z, t), Error);

  auto rng = stream_rng(12, 0);
  for (int n = 0; n <= 2; ++n)
    for (int k = 0; k < 10; ++k) {
      const Complex zz = 0.8 * complex_gaussian(rng), tt = 0.8 * complex_gaussian(rng);
      const PartitionSlice ps = partition_slice(SliceSpec::physical_t_line(tt), n);
      CHECK(rel(ps.zhat(zz) * std::exp(ps.logScale), gibbs_oracle(n, zz, tt)) < 1e-9);
    }
}

TEST_CASE("eval_logZ") {
  CHECK(eval_logZ(1.0, 1.0, 1) == doctest::Approx(std::log(16.0)).epsilon(1e-14));
  // Horner on zhat loses eps * sum|c_k||z|^k / |zhat(z)|; the pointwise orbit does not
  auto rng = stream_rng(13, 0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int strict = 0, total = 0;
  for (int n = 0; n <= 4; ++n)
    for (int k = 0; k < 20; ++k) {
      const Complex t = 0.05 + 0.9 * u(rng);
      const Complex z = std::polar(1.5 * std::sqrt(u(rng)), 2 * std::numbers::pi * u(rng));
      const PartitionSlice ps = partition_slice(SliceSpec::physical_t_line(t), n);
      const Complex val = ps.zhat(z);
      double maj = 0.0;
      for (int j = ps.zhat.degree(); j >= 0; --j) maj = maj * std::abs(z) + std::abs(ps.zhat[j]);
      const double cond = maj / std::abs(val);
      const double direct = std::log(std::abs(val)) + ps.logScale;
      const double err = std::abs(eval_logZ(z, t, n) - direct);
      CHECK(err < 1e-8 * std::max(1.0, std::abs(direct)) + 8.0 * ps.zhat.degree() * 1.2e-16 * cond);
      if (cond < 1e4) {
        ++total;
        strict += err < 1e-8 * std::max(1.0, std::abs(direct));
      }
    }
  CHECK(total > 40);
  CHECK(strict == total);
  // a regular orbit stays finite deep down
  CHECK(std::isfinite(eval_logZ(0.3, 0.5, 30)));
}

TEST_CASE("slice jets agree across precisions") {
  const RationalSlice sl = make_slice(SliceSpec::physical_t_line(0.5));
  const Complex s(0.8, 0.55);
  const SliceJet a = eval_slice_jet(sl, 4, LinearForm::y0(), s, Precision::Double);
  const SliceJet b = eval_slice_jet(sl, 4, LinearForm::y0(), s, Precision::DoubleDouble);
  const Complex va = a.value * std::exp(a.logScale), vb = b.value * std::exp(b.logScale);
  CHECK(rel(va, vb) < 1e-10);
  const Complex da = a.derivative * std::exp(a.logScale), db = b.derivative * std::exp(b.logScale);
  CHECK(rel(da, db) < 1e-10);

  // derivative against the explicit polynomial
  const PartitionSlice ps = partition_slice(SliceSpec::physical_t_line(0.5), 3);
  const SliceJet j = eval_slice_jet(sl, 3, LinearForm::y0(), s, Precision::DoubleDouble);
  const auto [pv, pd] = ps.zhat.eval_with_derivative(s);
  CHECK(rel(j.value * std::exp(j.logScale - ps.logScale), pv) < 1e-10);
  CHECK(rel(j.derivative * std::exp(j.logScale - ps.logScale), pd) < 1e-10);
}
