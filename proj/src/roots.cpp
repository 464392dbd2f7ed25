#include "dhl/roots.hpp"

#include "dhl/errors.hpp"
#include "dhl/renorm.hpp"
#include "dhl/slice_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

namespace dhl {

namespace {
constexpr double kGoldenAngle = std::numbers::pi * (3.0 - 2.2360679774997896964);  // pi (3 - sqrt 5)

std::vector<Complex> initial_ring(int d, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
  const double theta0 = ang(rng);
  std::vector<Complex> z(d);
  for (int k = 0; k < d; ++k) z[k] = std::polar(radius, theta0 + k * kGoldenAngle);
  return z;
}

// log of the majorant obtained by running the recursion on |coefficients| at |s|
double log_majorant(const RationalSlice& sl, int n, const LinearForm& y, double r) {
  std::array<double, 3> x{sl.pU.abs_eval(r), sl.pV.abs_eval(r), sl.pW.abs_eval(r)};
  double logs = 0.0;
  auto rescale = [&]() {
    const double m = std::max({x[0], x[1], x[2]});
    if (!(m > 0.0)) return;
    const int e = std::ilogb(m);
    for (auto& v : x) v = std::ldexp(v, -e);
    logs += e;
  };
  rescale();
  for (int k = 0; k < n; ++k) {
    const double a = x[0] * x[0] + x[1] * x[1];
    const double b = x[1] * (x[0] + x[2]);
    const double c = x[1] * x[1] + x[2] * x[2];
    x = {a * a, b * b, c * c};
    logs *= 4.0;
    rescale();
  }
  const double v = std::abs(y.p) * x[0] + std::abs(y.q) * x[1] + std::abs(y.r) * x[2];
  return std::log(v) + logs * std::numbers::ln2;
}
}  // namespace

std::vector<RootCluster> cluster_roots(const std::vector<Complex>& roots, double radius) {
  const int d = static_cast<int>(roots.size());
  std::vector<int> parent(d);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (std::abs(roots[i] - roots[j]) < radius) parent[find(j)] = find(i);
  std::vector<RootCluster> out;
  std::vector<int> slot(d, -1);
  std::vector<Complex> sum;
  for (int i = 0; i < d; ++i) {
    const int r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.size());
      out.push_back({0.0, 0});
      sum.push_back(0.0);
    }
    sum[slot[r]] += roots[i];
    ++out[slot[r]].multiplicity;
  }
  for (std::size_t k = 0; k < out.size(); ++k) out[k].center = sum[k] / static_cast<double>(out[k].multiplicity);
  return out;
}

RootReport aberth_solve(const NewtonOracle& f, int d, double ringRadius, const AberthOptions& opt) {
  if (d < 1) throw Error(ErrorKind::InvalidArgument, "aberth_solve needs degree >= 1");
  if (!(ringRadius > 0.0) || !std::isfinite(ringRadius)) ringRadius = 1.0;
  std::vector<Complex> z = initial_ring(d, ringRadius, opt.seed);
  std::vector<Complex> step(d, 0.0);
  std::vector<double> prevStep(d, std::numeric_limits<double>::infinity());
  std::vector<char> done(d, 0);
  std::vector<double> res(d, 1.0);

  RootReport rep;
  int it = 0;
  for (; it < opt.maxIter; ++it) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < d; ++i) {
      step[i] = 0.0;
      if (done[i]) continue;
      const NewtonEval ev = f(z[i]);
      res[i] = ev.relResidual;
      if (!ev.ok || !std::isfinite(std::abs(ev.ratio))) {
        step[i] = Complex(1e-8, 1e-8) * (1.0 + std::abs(z[i]));  // kick off a degenerate spot
        continue;
      }
      Complex s = 0.0;
      for (int j = 0; j < d; ++j)
        if (j != i) s += 1.0 / (z[i] - z[j]);
      const Complex w = ev.ratio / (1.0 - ev.ratio * s);
      step[i] = std::isfinite(std::abs(w)) ? w : ev.ratio;
    }
    bool all = true;
    for (int i = 0; i < d; ++i) {
      if (done[i]) continue;
      z[i] -= step[i];
      const double a = std::abs(step[i]);
      const double scale = std::max(1.0, std::abs(z[i]));
      // converged, or stalled at the rounding floor
      if (a <= opt.stepTol * scale || (a < 1e-9 * scale && a >= prevStep[i])) done[i] = 1;
      else all = false;
      prevStep[i] = a;
    }
    if (all) break;
  }
  rep.iterations = it + 1;

  // Newton polish, kept only where the residual drops
#pragma omp parallel for schedule(static)
  for (int i = 0; i < d; ++i) {
    NewtonEval ev = f(z[i]);
    for (int k = 0; k < 4 && ev.ok; ++k) {
      const Complex zn = z[i] - ev.ratio;
      const NewtonEval en = f(zn);
      if (!en.ok || !(en.relResidual < ev.relResidual)) break;
      z[i] = zn;
      ev = en;
    }
    res[i] = ev.ok ? ev.relResidual : 0.0;
  }
  rep.roots = z;
  rep.residuals = res;
  rep.maxResidual = *std::max_element(res.begin(), res.end());
  rep.clusters = cluster_roots(z, opt.clusterRadius);
  if (rep.maxResidual > 1e-9 && it >= opt.maxIter)
    throw Error(ErrorKind::NoConvergence,
                "aberth iteration cap reached, worst residual " + std::to_string(rep.maxResidual));
  return rep;
}

RootReport aberth_solve(const CPoly& p, const AberthOptions& opt) {
  const int d = p.degree();
  if (d < 1) throw Error(ErrorKind::InvalidArgument, "constant polynomial");
  if (!(std::abs(p.leading()) > 1e-300 * p.max_abs()))
    throw Error(ErrorKind::InvalidArgument, "leading coefficient vanishes");
  const double a0 = std::abs(p[0]);
  const double radius = a0 > 0.0 ? std::pow(a0 / std::abs(p.leading()), 1.0 / d) : 1.0;
  const CPoly rev = p.reversed();
  NewtonOracle f = [&p, &rev](Complex s) {
    NewtonEval ev;
    ev.relResidual = std::abs(s) <= 1.0 ? std::abs(p(s)) / p.abs_eval(std::abs(s))
                                        : std::abs(rev(1.0 / s)) / rev.abs_eval(1.0 / std::abs(s));
    ev.ratio = p.newton_ratio(s);
    ev.ok = std::isfinite(std::abs(ev.ratio));
    return ev;
  };
  return aberth_solve(f, d, radius, opt);
}

RootReport slice_roots(const RationalSlice& sl, int n, const LinearForm& y, Precision prec, const AberthOptions& opt) {
  const int d0 = sl.degree();
  long d = d0;
  for (int k = 0; k < n; ++k) d *= 4;
  const ScaledValue lead = eval_form_orbit(sl.coeff(d0), n, y);
  if (!(std::abs(lead.value) > 0.0)) throw Error(ErrorKind::DomainError, "leading coefficient vanishes on this slice");
  double radius = 1.0;
  try {
    const ScaledValue c0 = eval_form_orbit(sl.coeff(0), n, y);
    if (std::abs(c0.value) > 0.0) radius = std::exp((c0.log_abs() - lead.log_abs()) / static_cast<double>(d));
  } catch (const Error&) {
  }
  NewtonOracle f = [&](Complex s) {
    NewtonEval ev;
    const SliceJet j = eval_slice_jet(sl, n, y, s, prec);
    if (j.vanished || j.derivative == Complex(0.0)) {
      ev.ok = false;
      ev.relResidual = j.vanished ? 1.0 : 0.0;
      return ev;
    }
    ev.ratio = j.value / j.derivative;
    ev.relResidual = std::exp(std::log(std::abs(j.value)) + j.logScale - log_majorant(sl, n, y, std::abs(s)));
    return ev;
  };
  return aberth_solve(f, static_cast<int>(d), radius, opt);
}

EmpiricalMeasure measure_from_roots(const RootReport& rep) {
  EmpiricalMeasure m;
  const double total = static_cast<double>(rep.roots.size());
  for (const auto& c : rep.clusters) {
    m.points.push_back(c.center);
    m.weights.push_back(c.multiplicity / total);
  }
  return m;
}

double hausdorff_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  auto directed = [](const std::vector<Complex>& p, const std::vector<Complex>& q) {
    double worst = 0.0;
    for (const auto& x : p) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& y : q) best = std::min(best, std::abs(x - y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

namespace {
ZerosResult finish(RootReport rep) {
  ZerosResult out;
  for (const auto& r : rep.roots) out.maxCircleDeviation = std::max(out.maxCircleDeviation, std::abs(std::abs(r) - 1.0));
  out.measure = measure_from_roots(rep);
  out.report = std::move(rep);
  return out;
}
Precision pick(std::optional<Precision> prec, int n) {
  return prec.value_or(n >= 5 ? Precision::DoubleDouble : Precision::Double);
}
}  // namespace

ZerosResult slice_zeros(const RationalSlice& initial, int n, std::optional<Precision> prec, std::uint64_t seed) {
  AberthOptions opt;
  opt.seed = seed;
  return finish(slice_roots(initial, n, LinearForm::y0(), pick(prec, n), opt));
}

ZerosResult slice_zeros(const SliceSpec& spec, int n, std::optional<Precision> prec, std::uint64_t seed) {
  return slice_zeros(make_slice(spec), n, prec, seed);
}

ZerosResult lee_yang_zeros(Complex t, int n, std::optional<Precision> prec, std::uint64_t seed) {
  return slice_zeros(SliceSpec::physical_t_line(t), n, prec, seed);
}

std::vector<Complex> fisher_pullback_set(int n) {
  std::vector<Complex> level{-1.0};
  for (int k = 0; k < n; ++k) {
    std::vector<Complex> next;
    next.reserve(level.size() * 4);
    for (const auto& t : level) {
      const auto pre = fisher_1d_preimages(t);
      next.insert(next.end(), pre.begin(), pre.end());
    }
    level = std::move(next);
  }
  return level;
}

ZerosResult fisher_zeros(int n, std::optional<Precision> prec, std::uint64_t seed) {
  if (n < 0 || n > 5) throw Error(ErrorKind::InvalidArgument, "fisher_zeros supports n <= 5");
  ZerosResult out = slice_zeros(SliceSpec::physical_z1_line(), n, prec, seed);
  out.crossCheck = hausdorff_distance(out.report.roots, fisher_pullback_set(n));
  return out;
}

double potential_of_measure(const EmpiricalMeasure& m, Complex s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < m.points.size(); ++i) {
    const double r = std::abs(s - m.points[i]);
    if (r < 1e-14) throw Error(ErrorKind::Singular, "evaluation point on the support");
    acc += m.weights[i] * std::log(r);
  }
  return acc;
}

DensityTable angular_histogram(const EmpiricalMeasure& m, int bins) {
  if (bins < 1) throw Error(ErrorKind::InvalidArgument, "bins must be positive");
  DensityTable h;
  const double width = 2.0 * std::numbers::pi / bins;
  h.mass.assign(bins, 0.0);
  for (std::size_t i = 0; i < m.points.size(); ++i) {
    const double r = std::abs(m.points[i]);
    if (r <= 0.9 || r >= 1.1) ++h.outsideAnnulus;
    double phi = std::arg(m.points[i]);
    if (phi < 0.0) phi += 2.0 * std::numbers::pi;
    int b = static_cast<int>(std::floor(phi / width));
    b = std::clamp(b, 0, bins - 1);
    h.mass[b] += m.weights[i];
  }
  for (int b = 0; b < bins; ++b) {
    h.binCenter.push_back((b + 0.5) * width);
    h.density.push_back(h.mass[b] / width);
  }
  return h;
}

}  // namespace dhl
