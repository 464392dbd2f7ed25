#include "dhl/dynamics.hpp"
#include "dhl/errors.hpp"
#include "dhl/random.hpp"
#include "dhl/renorm.hpp"

#include <doctest.h>

#include <numbers>

using namespace dhl;

TEST_CASE("orbit classification") {
  const OrbitVerdict v = classify_orbit(normalize(1.0, 0.0, std::polar(0.5, 1.0)), 100);
  CHECK(v.outcome == Outcome::ToE);
  CHECK(v.stepsUsed <= 8);

  auto rng = stream_rng(41, 0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const ProjPoint p = sc_point(u(rng), std::polar(0.99 * std::sqrt(u(rng)), 2 * std::numbers::pi * u(rng)));
    REQUIRE(in_sc(p));
    CHECK(classify_orbit(p, 500).outcome == Outcome::ToE);
    CHECK(classify_orbit(p.rho(), 500).outcome == Outcome::ToEPrime);
  }

  CHECK(classify_orbit(fixed::beta1(), 200).outcome == Outcome::Unresolved);
  ClassifyOptions lines;
  lines.lineAttractors = true;
  CHECK(classify_orbit(fixed::beta1(), 200, lines).outcome == Outcome::ToBeta1);
  CHECK(classify_orbit(normalize(1.0, 0.05, 1.0), 200, lines).outcome == Outcome::ToBeta0);
}

TEST_CASE("rho mirror on random points") {
  auto rng = stream_rng(42, 0);
  for (int k = 0; k < 300; ++k) {
    const ProjPoint p = ProjPoint::from_raw(random_unit_vec3(rng));
    const OrbitVerdict a = classify_orbit(p, 60), b = classify_orbit(p.rho(), 60);
    const Outcome mirrored = a.outcome == Outcome::ToE ? Outcome::ToEPrime : a.outcome == Outcome::ToEPrime ? Outcome::ToE : a.outcome;
    CHECK(b.outcome == mirrored);
    CHECK(b.stepsUsed == a.stepsUsed);
  }
}

TEST_CASE("solid cylinder suite") {
  const CylinderReport r = solid_cylinder_suite(1000, 43);
  REQUIRE(r.sets.size() == 4);
  CHECK(r.mirrorExact);
  CHECK(r.sets[0].toEPrime == 0);
  CHECK(r.sets[0].toE == r.sets[0].samples);
  CHECK(r.sets[1].toE == 0);
  CHECK(r.sets[2].toEPrime == 0);
  CHECK(r.sets[3].toE == 0);
  CHECK(r.sets[3].resolvedFraction() > 0.99);
}

TEST_CASE("Fisher map basins") {
  CHECK(classify_fisher(0.05, 200) == Outcome::ToBeta0);
  CHECK(classify_fisher(0.95, 200) == Outcome::ToBeta1);
  const double tc = fisher_critical_point();
  // t_c is the repelling fixed point in (0,1): (1 + t^2)^2 = 4t
  CHECK(std::abs((1 + tc * tc) * (1 + tc * tc) - 4 * tc) < 1e-9);
  CHECK(classify_fisher(tc - 1e-8, 400) == Outcome::ToBeta0);
  CHECK(classify_fisher(tc + 1e-8, 400) == Outcome::ToBeta1);
}

TEST_CASE("julia_1d is conjugation symmetric") {
  const Raster r = julia_1d({-2, 2, -2, 2}, 128, 128, 60);
  for (int j = 0; j < 128; ++j)
    for (int i = 0; i < 128; ++i) REQUIRE(r.at(i, j) == r.at(i, 127 - j));
  CHECK(std::abs(r.pixel(0, 0) - std::conj(r.pixel(0, 127))) < 1e-15);
}

TEST_CASE("Fisher-line slice raster reproduces julia_1d") {
  const Rect rect{-2, 2, -2, 2};
  const Raster a = julia_1d(rect, 512, 512, 20);
  SliceRasterOptions o;
  o.classify.lineAttractors = true;
  const Raster b = julia_slice_2d(make_slice(SliceSpec::physical_z1_line()), rect, 512, 512, 20, o);
  CHECK(unresolved_iou(a, b) > 0.9);
}

TEST_CASE("overlay zeros sit on the Julia band") {
  const Raster r = julia_slice_2d(make_slice(SliceSpec::physical_t_line(0.5)), {-1.5, 1.5, -1.5, 1.5}, 1024, 1024, 60,
                                  {ClassifyOptions{}, 4});
  CHECK(r.overlay.size() > 400);
  CHECK(overlay_hit_fraction(r, 2) >= 0.95);
  CHECK_THROWS_AS(julia_slice_2d(make_slice(SliceSpec::physical_z1_line()), {-1, 1, -1, 1}, 8, 8, 10, {ClassifyOptions{}, 1}), Error);
}

TEST_CASE("slice inside SC is a solid basin") {
  const Raster r = julia_slice_2d(make_slice(SliceSpec::line(fixed::e(), fixed::e_prime())), {-0.6, 0.6, -0.6, 0.6}, 64, 64, 100);
  for (const auto c : r.cls) REQUIRE(c == static_cast<std::uint8_t>(Outcome::ToE));
}

TEST_CASE("critical locus and folds") {
  const CriticalReport rep = critical_locus_residuals(100, 44);
  for (const auto& c : rep.curves) {
    CHECK(c.maxDet < 1e-8);
    CHECK(c.minControlDet > 1e-6);
  }
  CHECK(rep.conicMinDet > 1e-6);  // the conic is a critical value curve, not critical

  const auto& cs = critical_curves();
  auto slope = [&](CurveId id) {
    for (const auto& c : cs)
      if (c.id == id) return fold_exponent(c, Complex(0.7, 0.3));
    return FoldFit{};
  };
  for (const CurveId id : {CurveId::L1, CurveId::L3Plus, CurveId::L3Minus, CurveId::L4Plus, CurveId::L4Minus}) {
    const FoldFit f = slope(id);
    CHECK(std::abs(f.slope - 1.0) < 0.05);
    CHECK(f.r2 > 0.99);
  }
  const FoldFit l2 = slope(CurveId::L2);
  CHECK(std::abs(l2.slope - 2.0) < 0.05);
  CHECK(l2.r2 > 0.99);
}

TEST_CASE("power map area lemma") {
  // centred disk: Q^-1 of radius r^2 is radius r, equality case
  const double r = 0.6;
  const AreaResult eq = power_map_area_mc(2, {{0.0, r * r}}, 400000, 45);
  CHECK(std::abs(eq.areaX - r * r * r * r) < 5 * eq.sigmaX);
  CHECK(std::abs(eq.areaPre - r * r) < 5 * eq.sigmaPre);
  CHECK(eq.holds);

  const AreaResult none = power_map_area_mc(3, {}, 1000, 45);
  CHECK(none.areaX == 0.0);
  CHECK(none.areaPre == 0.0);
  CHECK(none.holds);

  auto rng = stream_rng(46, 0);
  for (int k = 0; k < 5; ++k) CHECK(power_map_area_mc(3, random_disk_union(3, rng), 200000, 47 + k).holds);
}

TEST_CASE("maximal entropy sampling") {
  const MmeCloud a = mme_sample(20000, 20, 48), b = mme_sample(20000, 20, 48), c = mme_sample(200, 20, 49);
  REQUIRE(a.points.size() == 20000);
  bool same = true;
  for (std::size_t k = 0; k < a.points.size(); ++k) same = same && a.points[k] == b.points[k];
  CHECK(same);
  CHECK(c.points[0] != a.points[0]);
  CHECK(lyapunov_proxy(a) >= std::log(std::sqrt(2.0)) - 0.1);
  CHECK(unresolved_fraction(a, 20) >= 0.99);
  CHECK(forward_push_tv(a) < 0.05);
  CHECK_THROWS_AS(mme_sample(10, 5, 1), Error);
}

TEST_CASE("algebraic stability") {
  for (int n = 1; n <= 2; ++n) {
    const StabilityReport m = stability_check(MapKind::Mig, n, 50);
    for (const auto& l : m.lines) {
      CHECK(l.commonRoots == 0);
      CHECK(l.effectiveDegree == (n == 1 ? 4 : 16));
    }
  }
  const StabilityReport p1 = stability_check(MapKind::Phys, 1, 51);
  for (const auto& l : p1.lines) {
    CHECK(l.degree == 6);
    CHECK(l.commonRoots == 0);
  }
  // (Z^2 + T^2)^4 divides every component of the second iterate: 36 - 8 = 28
  const StabilityReport p2 = stability_check(MapKind::Phys, 2, 52);
  CHECK(p2.linesWithCommon() == 3);
  for (const auto& l : p2.lines) {
    CHECK(l.effectiveDegree == 28);
    CHECK(l.effectiveDegree > 16);
    CHECK(l.effectiveDegree < 36);
  }
  CHECK_THROWS_AS(stability_check(MapKind::Mig, 4, 1), Error);
}
