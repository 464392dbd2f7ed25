#include "dhl/dynamics.hpp"
#include "dhl/errors.hpp"
#include "dhl/random.hpp"
#include "dhl/roots.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace dhl {

namespace {

struct Dual {
  Complex v, d;
};
Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.v * b.d + a.d * b.v}; }

using Tri = std::array<Dual, 3>;

Tri step(MapKind m, const Tri& x) {
  if (m == MapKind::Mig) {
    const Dual a = x[0] * x[0] + x[1] * x[1];
    const Dual b = x[1] * (x[0] + x[2]);
    const Dual c = x[1] * x[1] + x[2] * x[2];
    return {a * a, b * b, c * c};
  }
  const Dual z2 = x[0] * x[0], t2 = x[1] * x[1], y2 = x[2] * x[2];
  const Dual zt = z2 + t2, zy = z2 + y2;
  return {z2 * zt * zt, zy * zy * t2, (y2 * y2 + z2 * t2) * zt};
}

std::array<double, 3> step_abs(MapKind m, const std::array<double, 3>& x) {
  if (m == MapKind::Mig) {
    const double a = x[0] * x[0] + x[1] * x[1];
    const double b = x[1] * (x[0] + x[2]);
    const double c = x[1] * x[1] + x[2] * x[2];
    return {a * a, b * b, c * c};
  }
  const double z2 = x[0] * x[0], t2 = x[1] * x[1], y2 = x[2] * x[2];
  const double zt = z2 + t2, zy = z2 + y2;
  return {z2 * zt * zt, zy * zy * t2, (y2 * y2 + z2 * t2) * zt};
}

struct LineMap {
  MapKind m;
  int n;
  Vec3 x0, d;

  // F(s) and F'(s), unscaled; degrees stay below 36 so no overflow at moderate |s|
  Tri eval(Complex s) const {
    Tri x;
    for (int i = 0; i < 3; ++i) x[i] = {x0[i] + s * d[i], d[i]};
    for (int k = 0; k < n; ++k) x = step(m, x);
    return x;
  }
  // coefficient majorant |F|(|s|)
  double majorant(double r) const {
    std::array<double, 3> x;
    for (int i = 0; i < 3; ++i) x[i] = std::abs(x0[i]) + r * std::abs(d[i]);
    for (int k = 0; k < n; ++k) x = step_abs(m, x);
    return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  }
};

}  // namespace

int StabilityReport::linesWithCommon() const {
  return static_cast<int>(std::count_if(lines.begin(), lines.end(), [](const StabilityLine& l) { return l.commonRoots > 0; }));
}

StabilityReport stability_check(MapKind map, int n, std::uint64_t seed, int nLines) {
  if (n < 1 || n > 3) throw Error(ErrorKind::InvalidArgument, "stability_check supports 1 <= n <= 3");
  constexpr double kLink = 1e-3, kCommon = 1e-8, kApart = 1e-6;
  StabilityReport rep;
  rep.map = map;
  rep.n = n;
  const int base = map == MapKind::Mig ? 4 : 6;
  int deg = 1;
  for (int k = 0; k < n; ++k) deg *= base;

  for (int li = 0; li < nLines; ++li) {
    auto rng = stream_rng(seed, static_cast<std::uint64_t>(li));
    LineMap lm{map, n, {}, {}};
    for (int i = 0; i < 3; ++i) lm.x0[i] = complex_gaussian(rng);
    for (int i = 0; i < 3; ++i) lm.d[i] = complex_gaussian(rng);
    std::array<Complex, 3> comb;
    for (auto& c : comb) c = complex_gaussian(rng);
    NewtonOracle f = [&lm, comb](Complex s) {
      const Tri x = lm.eval(s);
      Dual y{0.0, 0.0};
      for (int i = 0; i < 3; ++i) y = y + Dual{comb[i], 0.0} * x[i];
      NewtonEval ev;
      ev.ok = y.d != Complex(0.0);
      ev.ratio = ev.ok ? y.v / y.d : Complex(0.0);
      ev.relResidual = std::abs(y.v) / lm.majorant(std::abs(s));
      return ev;
    };
    AberthOptions opt;
    opt.seed = seed + li;
    const std::vector<Complex> roots = aberth_solve(f, deg, 1.0, opt).roots;

    // a common zero of order m splits into m roots of the combination, about
    // eps^(1/m) apart; their centroid is good to eps^(2/m)
    std::vector<int> parent(roots.size());
    for (std::size_t i = 0; i < roots.size(); ++i) parent[i] = static_cast<int>(i);
    auto find = [&](int i) {
      while (parent[i] != i) i = parent[i] = parent[parent[i]];
      return i;
    };
    for (std::size_t i = 0; i < roots.size(); ++i)
      for (std::size_t j = i + 1; j < roots.size(); ++j)
        if (std::abs(roots[i] - roots[j]) < kLink * (1.0 + std::abs(roots[i]))) parent[find(static_cast<int>(j))] = find(static_cast<int>(i));

    StabilityLine line;
    line.degree = deg;
    line.minDistNonCommon = std::numeric_limits<double>::infinity();
    std::vector<Complex> uniq;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (find(static_cast<int>(i)) != static_cast<int>(i)) continue;
      Complex c = 0.0;
      int m = 0;
      for (std::size_t j = 0; j < roots.size(); ++j)
        if (find(static_cast<int>(j)) == static_cast<int>(i)) c += roots[j], ++m;
      c /= static_cast<double>(m);
      // Newton distance of every component: all small only at a common zero
      const Tri x = lm.eval(c);
      double dist = 0.0;
      for (const Dual& xi : x) {
        if (xi.v == Complex(0.0)) continue;
        dist = std::max(dist, xi.d == Complex(0.0) ? std::numeric_limits<double>::infinity() : m * std::abs(xi.v / xi.d));
      }
      dist /= 1.0 + std::abs(c);
      if (dist < kCommon) {
        line.commonRoots += m;
        uniq.push_back(c);
        line.maxDistCommon = std::max(line.maxDistCommon, dist);
      } else {
        line.minDistNonCommon = std::min(line.minDistNonCommon, dist);
        if (dist < kApart) line.inconclusive = true;
      }
    }
    line.uniqueCommon = static_cast<int>(uniq.size());
    line.effectiveDegree = deg - line.commonRoots;
    rep.lines.push_back(line);
  }
  if (std::all_of(rep.lines.begin(), rep.lines.end(), [](const StabilityLine& l) { return l.inconclusive; }))
    throw Error(ErrorKind::InconclusiveNumerics, "no line separated common from simple roots");
  return rep;
}

}  // namespace dhl
