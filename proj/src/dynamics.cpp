#include "dhl/dynamics.hpp"

#include "dhl/errors.hpp"
#include "dhl/random.hpp"
#include "dhl/roots.hpp"
#include "dhl/slice_engine.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dhl {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::ToE: return "ToE";
    case Outcome::ToEPrime: return "ToEPrime";
    case Outcome::Unresolved: return "Unresolved";
    case Outcome::ToBeta0: return "ToBeta0";
    case Outcome::ToBeta1: return "ToBeta1";
  }
  return "?";
}

namespace {
// one normalized step; false when the image vanishes
bool hat_step(Vec3& x) {
  const Vec3 y = mk_hat(x);
  const double c = sym_norm(y);
  if (!(c > 1e-300) || !std::isfinite(c)) return false;
  x = y / c;
  return true;
}
}  // namespace

OrbitVerdict classify_orbit(const ProjPoint& p, int budget, const ClassifyOptions& opt) {
  if (budget < 1) throw Error(ErrorKind::InvalidArgument, "budget must be >= 1");
  struct Target {
    Vec3 x;
    Outcome o;
  };
  std::vector<Target> targets{{fixed::e().coords(), Outcome::ToE}, {fixed::e_prime().coords(), Outcome::ToEPrime}};
  if (opt.lineAttractors) {
    targets.push_back({fixed::beta0().coords(), Outcome::ToBeta0});
    targets.push_back({fixed::beta1().coords(), Outcome::ToBeta1});
  }
  OrbitVerdict v;
  Vec3 x = p.coords();
  for (int step = 1; step <= budget; ++step) {
    if (!hat_step(x)) {
      v.indeterminate = true;
      v.stepsUsed = step;
      return v;
    }
    for (const auto& t : targets) {
      double d = chordal_dist(t.x, x);
      if (d >= opt.enterRadius) continue;
      bool ok = true;
      int k = 0;
      for (; k < opt.confirmSteps; ++k) {
        if (!hat_step(x)) {
          ok = false;
          break;
        }
        const double dn = chordal_dist(t.x, x);
        if (!(dn <= opt.contraction * d * d + 1e-15)) {
          ok = false;
          break;
        }
        d = dn;
      }
      step += k;
      if (ok) {
        v.outcome = t.o;
        v.stepsUsed = step;
        v.finalDistance = d;
        return v;
      }
      break;
    }
  }
  v.stepsUsed = budget;
  double best = 1.0;
  for (const auto& t : targets) best = std::min(best, chordal_dist(t.x, x));
  v.finalDistance = best;
  return v;
}

ProjPoint sc_point(double c, Complex xi) { return normalize(1.0, std::sqrt(c * xi), xi); }

bool in_sc(const ProjPoint& x) {
  if (std::abs(x.u()) == 0.0) return false;
  if (!(std::abs(x.w()) < std::abs(x.u()))) return false;
  if (x.w() == Complex(0.0)) return x.v() == Complex(0.0);
  const Complex q = x.v() * x.v() / (x.u() * x.w());
  return std::abs(q.imag()) <= 1e-12 && q.real() >= -1e-12 && q.real() <= 1.0 + 1e-12;
}

bool in_sc_prime(const ProjPoint& x) { return in_sc(x.rho()); }

namespace {
Complex unit_disk_sample(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = std::sqrt(u(rng));
  const double th = 2.0 * std::numbers::pi * u(rng);
  return std::polar(r, th);
}

void tally(CylinderCounts& c, Outcome o) {
  ++c.samples;
  switch (o) {
    case Outcome::ToE: ++c.toE; break;
    case Outcome::ToEPrime: ++c.toEPrime; break;
    case Outcome::Unresolved: ++c.unresolved; break;
    default: ++c.other; break;
  }
}
}  // namespace

CylinderReport solid_cylinder_suite(int samples, std::uint64_t seed, int budget) {
  CylinderReport rep;
  rep.sets = {{"SC"}, {"SC'"}, {"phys |z|<1"}, {"phys |z|>1"}};
  // outcome per sample and set, filled in parallel, tallied in order
  std::vector<std::array<Outcome, 4>> out(samples);
  std::vector<char> mirrored(samples, 1);
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
#pragma omp parallel for schedule(dynamic)
  for (std::uint64_t ch = 0; ch < chunks; ++ch) {
    auto rng = stream_rng(seed, ch);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::uint64_t end = std::min<std::uint64_t>(samples, (ch + 1) * kChunk);
    for (std::uint64_t s = ch * kChunk; s < end; ++s) {
      const double c = u(rng);
      const Complex xi = unit_disk_sample(rng);
      const ProjPoint x = sc_point(c, xi);
      const OrbitVerdict a = classify_orbit(x, budget);
      const OrbitVerdict b = classify_orbit(x.rho(), budget);
      out[s][0] = a.outcome;
      out[s][1] = b.outcome;
      const Outcome swapped = a.outcome == Outcome::ToE ? Outcome::ToEPrime
                              : a.outcome == Outcome::ToEPrime ? Outcome::ToE
                                                               : a.outcome;
      mirrored[s] = (swapped == b.outcome && a.stepsUsed == b.stepsUsed) ? 1 : 0;

      Complex z = unit_disk_sample(rng);
      if (z == Complex(0.0)) z = 1e-3;
      const double t1 = 1.0 - u(rng);  // (0, 1]
      out[s][2] = classify_orbit(psi({z, t1}), budget).outcome;
      Complex w = unit_disk_sample(rng);
      if (w == Complex(0.0)) w = 1e-3;
      const double t2 = 1.0 - u(rng);
      out[s][3] = classify_orbit(psi({1.0 / w, t2}), budget).outcome;
    }
  }
  for (int s = 0; s < samples; ++s) {
    for (int k = 0; k < 4; ++k) tally(rep.sets[k], out[s][k]);
    if (!mirrored[s]) rep.mirrorExact = false;
  }
  return rep;
}

Complex Raster::pixel(int i, int j) const {
  const double cx = 0.5 * (rect.xmin + rect.xmax), hx = 0.5 * (rect.xmax - rect.xmin);
  const double cy = 0.5 * (rect.ymin + rect.ymax), hy = 0.5 * (rect.ymax - rect.ymin);
  // integer numerators keep the grid exactly symmetric about the centre
  return {cx + hx * static_cast<double>(2 * i + 1 - nx) / nx, cy - hy * static_cast<double>(2 * j + 1 - ny) / ny};
}

namespace {
Complex fisher_step(Complex t) {
  if (!std::isfinite(std::abs(t)) || std::abs(t) > 1e150) {
    const Complex g = 2.0 / t;
    return g * g;
  }
  const Complex d = t * t + 1.0;
  if (d == Complex(0.0)) return {std::numeric_limits<double>::infinity(), 0.0};
  const Complex g = 2.0 * t / d;
  return g * g;
}

bool confirm_fisher(Complex t, Complex target, int steps) {
  double d = std::abs(t - target);
  for (int k = 0; k < steps; ++k) {
    t = fisher_step(t);
    const double dn = std::abs(t - target);
    if (!(dn <= 16.0 * d * d + 1e-15)) return false;
    d = dn;
  }
  return true;
}
}  // namespace

Outcome classify_fisher(Complex t, int budget) {
  for (int k = 0; k <= budget; ++k) {
    if (std::abs(t) < 1e-6 && confirm_fisher(t, 0.0, 3)) return Outcome::ToBeta0;
    if (std::abs(t - 1.0) < 1e-6 && confirm_fisher(t, 1.0, 3)) return Outcome::ToBeta1;
    if (k < budget) t = fisher_step(t);
  }
  return Outcome::Unresolved;
}

double fisher_critical_point(int budget) {
  double lo = 0.05, hi = 0.95;
  if (classify_fisher(lo, budget) != Outcome::ToBeta0 || classify_fisher(hi, budget) != Outcome::ToBeta1)
    throw Error(ErrorKind::NoConvergence, "basin bracket failed");
  while (hi - lo > 1e-11) {
    const double mid = 0.5 * (lo + hi);
    const Outcome o = classify_fisher(mid, budget);
    if (o == Outcome::ToBeta0) lo = mid;
    else if (o == Outcome::ToBeta1) hi = mid;
    else break;
  }
  return 0.5 * (lo + hi);
}

Raster julia_1d(const Rect& rect, int nx, int ny, int budget) {
  Raster r;
  r.nx = nx;
  r.ny = ny;
  r.rect = rect;
  r.cls.resize(static_cast<std::size_t>(nx) * ny);
#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      r.cls[static_cast<std::size_t>(j) * nx + i] = static_cast<std::uint8_t>(classify_fisher(r.pixel(i, j), budget));
  r.tc = fisher_critical_point();
  return r;
}

Raster julia_slice_2d(const RationalSlice& slice, const Rect& rect, int nx, int ny, int budget,
                      const SliceRasterOptions& opt) {
  if (opt.overlayLevel >= 0) {
    const CPoly diff = slice.pU - slice.pW;
    if (diff.max_abs() <= 1e-14 * std::max({slice.pU.max_abs(), slice.pW.max_abs(), 1e-300}))
      throw Error(ErrorKind::DegenerateSlice, "U - W vanishes identically on this slice, no overlay");
  }
  Raster r;
  r.nx = nx;
  r.ny = ny;
  r.rect = rect;
  r.cls.resize(static_cast<std::size_t>(nx) * ny);
#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      Outcome o = Outcome::Unresolved;
      const Vec3 x = slice.eval(r.pixel(i, j));
      if (x.allFinite() && sym_norm(x) > 0.0) o = classify_orbit(normalize(x), budget, opt.classify).outcome;
      r.cls[static_cast<std::size_t>(j) * nx + i] = static_cast<std::uint8_t>(o);
    }
  }
  if (opt.overlayLevel >= 0) {
    const LinearForm invariant{1.0, 0.0, -1.0};
    const RootReport rep = slice_roots(slice, opt.overlayLevel, invariant, Precision::Double);
    const double cx = 0.5 * (rect.xmin + rect.xmax), hx = 0.5 * (rect.xmax - rect.xmin);
    const double cy = 0.5 * (rect.ymin + rect.ymax), hy = 0.5 * (rect.ymax - rect.ymin);
    for (const auto& s : rep.roots) {
      const int i = static_cast<int>(std::floor(((s.real() - cx) / hx * nx + nx) / 2.0));
      const int j = static_cast<int>(std::floor((ny - (s.imag() - cy) / hy * ny) / 2.0));
      if (i >= 0 && i < nx && j >= 0 && j < ny) r.overlay.emplace_back(i, j);
    }
  }
  return r;
}

double overlay_hit_fraction(const Raster& r, int radius) {
  if (r.overlay.empty()) return 1.0;
  int hit = 0;
  const auto unresolved = static_cast<std::uint8_t>(Outcome::Unresolved);
  // J band: Unresolved pixels plus pixels with a differently classified 4-neighbour;
  // a thin Julia curve leaves no Unresolved pixels at all
  auto in_band = [&](int a, int b) {
    if (r.at(a, b) == unresolved) return true;
    const int nb[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    for (const auto& d : nb) {
      const int c = a + d[0], e = b + d[1];
      if (c >= 0 && c < r.nx && e >= 0 && e < r.ny && r.at(c, e) != r.at(a, b)) return true;
    }
    return false;
  };
  for (auto [i, j] : r.overlay) {
    bool found = false;
    for (int dj = -radius; dj <= radius && !found; ++dj)
      for (int di = -radius; di <= radius && !found; ++di) {
        const int a = i + di, b = j + dj;
        if (a >= 0 && a < r.nx && b >= 0 && b < r.ny && in_band(a, b)) found = true;
      }
    hit += found;
  }
  return static_cast<double>(hit) / r.overlay.size();
}

double unresolved_iou(const Raster& a, const Raster& b) {
  if (a.cls.size() != b.cls.size()) throw Error(ErrorKind::InvalidArgument, "raster sizes differ");
  const auto u = static_cast<std::uint8_t>(Outcome::Unresolved);
  std::size_t inter = 0, uni = 0;
  for (std::size_t k = 0; k < a.cls.size(); ++k) {
    const bool p = a.cls[k] == u, q = b.cls[k] == u;
    inter += p && q;
    uni += p || q;
  }
  return uni ? static_cast<double>(inter) / uni : 1.0;
}

Vec3 transverse_point(const CriticalCurve& c, const Vec3& x, double r) {
  Vec3 nrm = c.gradient(x).conjugate();
  nrm -= x * x.dot(nrm);
  nrm.normalize();
  const Vec3 y = x + r * nrm;
  return y / y.norm();
}

namespace {
bool near_excluded(const Vec3& x, double radius) {
  for (const auto& p : {fixed::a_plus(), fixed::a_minus(), fixed::e(), fixed::e_prime()})
    if (chordal_dist(p.coords(), x) < radius) return true;
  return false;
}

Complex random_param(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double r = std::exp(std::log(0.2) + u(rng) * std::log(25.0));  // |s| in [0.2, 5]
  return std::polar(r, 2.0 * std::numbers::pi * u(rng));
}
}  // namespace

CriticalReport critical_locus_residuals(int samplesPerCurve, std::uint64_t seed) {
  CriticalReport rep;
  std::uint64_t stream = 0;
  for (const auto& c : critical_curves()) {
    auto rng = stream_rng(seed, stream++);
    CurveResidual cr;
    cr.name = c.name;
    cr.minControlDet = std::numeric_limits<double>::infinity();
    while (cr.samples < samplesPerCurve) {
      const Vec3 x = canonical_unit(c.param(random_param(rng)));
      if (near_excluded(x, 1e-2)) continue;
      const Vec3 y = transverse_point(c, x, 0.1);
      if (near_excluded(y, 1e-2)) continue;
      cr.maxDet = std::max(cr.maxDet, std::abs(tangent_jacobian(normalize(x)).det));
      cr.minControlDet = std::min(cr.minControlDet, std::abs(tangent_jacobian(normalize(y)).det));
      ++cr.samples;
    }
    rep.curves.push_back(cr);
  }
  auto rng = stream_rng(seed, stream);
  rep.conicMinDet = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samplesPerCurve;) {
    const Complex chi = random_param(rng);
    if (std::abs(chi + 1.0) < 0.05) continue;
    const ProjPoint p = blowup_image(chi);
    if (near_excluded(p.coords(), 1e-2)) continue;
    rep.conicMinDet = std::min(rep.conicMinDet, std::abs(tangent_jacobian(p).det));
    ++k;
  }
  return rep;
}

FoldFit fold_exponent(const CriticalCurve& c, Complex baseParam, const std::vector<double>& radiiIn) {
  std::vector<double> radii = radiiIn;
  if (radii.empty())
    for (int k = 0; k <= 8; ++k) radii.push_back(std::pow(10.0, -6.0 + 0.5 * k));
  const Vec3 x = canonical_unit(c.param(baseParam));
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  const double m = static_cast<double>(radii.size());
  for (const double r : radii) {
    const double lx = std::log(r);
    const double ly = std::log(std::abs(tangent_jacobian(normalize(transverse_point(c, x, r))).det));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    syy += ly * ly;
  }
  FoldFit f;
  const double vx = m * sxx - sx * sx, vy = m * syy - sy * sy, cxy = m * sxy - sx * sy;
  f.slope = cxy / vx;
  f.r2 = vy > 0.0 ? cxy * cxy / (vx * vy) : 1.0;
  if (!(f.r2 >= 0.99))
    throw Error(ErrorKind::FitUnstable, c.name + " fold fit R^2 = " + std::to_string(f.r2));
  return f;
}

std::vector<Disk> random_disk_union(int count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Disk> out;
  for (int k = 0; k < count; ++k) {
    const Complex c = 0.8 * unit_disk_sample(rng);
    const double rmax = std::min(0.4, 1.0 - std::abs(c));
    out.push_back({c, 0.05 + (rmax - 0.05) * u(rng)});
  }
  return out;
}

AreaResult power_map_area_mc(int d, const std::vector<Disk>& disks, long samples, std::uint64_t seed) {
  if (d < 1 || samples < 1) throw Error(ErrorKind::InvalidArgument, "power_map_area_mc needs d >= 1, samples >= 1");
  auto inside = [&disks](Complex w) {
    for (const auto& D : disks)
      if (std::abs(w - D.center) < D.radius) return true;
    return false;
  };
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<long> cx(chunks, 0), cp(chunks, 0);
#pragma omp parallel for schedule(static)
  for (std::uint64_t ch = 0; ch < chunks; ++ch) {
    auto rng = stream_rng(seed, ch);
    const std::uint64_t end = std::min<std::uint64_t>(samples, (ch + 1) * kChunk);
    for (std::uint64_t s = ch * kChunk; s < end; ++s) {
      const Complex w = unit_disk_sample(rng);
      Complex q = 1.0;
      for (int k = 0; k < d; ++k) q *= w;
      cx[ch] += inside(w);
      cp[ch] += inside(q);
    }
  }
  long nx = 0, np = 0;
  for (std::uint64_t ch = 0; ch < chunks; ++ch) {
    nx += cx[ch];
    np += cp[ch];
  }
  AreaResult a;
  const double n = static_cast<double>(samples);
  a.areaX = nx / n;
  a.areaPre = np / n;
  a.sigmaX = std::sqrt(a.areaX * (1.0 - a.areaX) / n);
  a.sigmaPre = std::sqrt(a.areaPre * (1.0 - a.areaPre) / n);
  const double root = std::pow(a.areaX, 1.0 / d);
  // delta method for areaX^(1/d)
  const double sigmaRoot = a.areaX > 0.0 ? root / (d * a.areaX) * a.sigmaX : 0.0;
  const double sigma = std::hypot(a.sigmaPre, sigmaRoot);
  a.bound = root + 3.0 * sigma;
  a.holds = a.areaPre <= a.bound;
  return a;
}

MmeCloud mme_sample(int count, int burnIn, std::uint64_t seed, int chains, const ProjPoint& start, int thin) {
  if (burnIn < 20) throw Error(ErrorKind::InvalidArgument, "burnIn must be >= 20");
  if (count < 1 || chains < 1 || thin < 1) throw Error(ErrorKind::InvalidArgument, "count, chains and thin must be positive");
  struct ChainOut {
    std::vector<Vec3> pts;
    int resamples = 0, degenerate = 0;
  };
  std::vector<ChainOut> outs(chains);
#pragma omp parallel for schedule(dynamic)
  for (int c = 0; c < chains; ++c) {
    auto rng = stream_rng(seed, static_cast<std::uint64_t>(c));
    std::uniform_int_distribution<int> slot(0, 7);
    const int mine = count / chains + (c < count % chains ? 1 : 0);
    ChainOut& o = outs[c];
    o.pts.reserve(mine);
    ProjPoint x = start, prev = start;
    int taken = 0;
    while (static_cast<int>(o.pts.size()) < mine) {
      InverseFiber fib;
      try {
        fib = inverse_branches(x);
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::InfiniteFiber) throw;
        ++o.resamples;
        x = prev;  // redraw the previous step
        continue;
      }
      if (fib.degenerate) ++o.degenerate;
      prev = x;
      x = fib.points[slot(rng)];
      if (taken >= burnIn && (taken - burnIn) % thin == 0) o.pts.push_back(x.coords());
      ++taken;
    }
  }
  MmeCloud cloud;
  for (auto& o : outs) {
    cloud.points.insert(cloud.points.end(), o.pts.begin(), o.pts.end());
    cloud.infiniteFiberResamples += o.resamples;
    cloud.degenerateSteps += o.degenerate;
  }
  return cloud;
}

double lyapunov_proxy(const MmeCloud& cloud) {
  const long n = static_cast<long>(cloud.points.size());
  std::vector<double> v(n, std::numeric_limits<double>::quiet_NaN());
#pragma omp parallel for schedule(static)
  for (long k = 0; k < n; ++k) {
    try {
      const auto j = tangent_jacobian(normalize(cloud.points[k]));
      Eigen::JacobiSVD<Eigen::Matrix2cd> svd(j.matrix);
      v[k] = std::log(svd.singularValues()[1]);
    } catch (const Error&) {
    }
  }
  double sum = 0.0;
  long cnt = 0;
  for (const double x : v)
    if (std::isfinite(x)) {
      sum += x;
      ++cnt;
    }
  return cnt ? sum / cnt : std::numeric_limits<double>::quiet_NaN();
}

double unresolved_fraction(const MmeCloud& cloud, int budget) {
  const long n = static_cast<long>(cloud.points.size());
  long cnt = 0;
#pragma omp parallel for reduction(+ : cnt) schedule(static)
  for (long k = 0; k < n; ++k)
    cnt += classify_orbit(normalize(cloud.points[k]), budget).outcome == Outcome::Unresolved;
  return n ? static_cast<double>(cnt) / n : 0.0;
}

double forward_push_tv(const MmeCloud& cloud, int b) {
  auto bin = [b](const Vec3& x) {
    const double pu = std::norm(x[0]) / x.squaredNorm();
    const double pw = std::norm(x[2]) / x.squaredNorm();
    const Complex q = x[1] * x[1] * std::conj(x[0]) * std::conj(x[2]);
    const double ph = q == Complex(0.0) ? 0.0 : std::arg(q);
    auto idx = [b](double v, double lo, double hi) {
      return std::clamp(static_cast<int>(std::floor((v - lo) / (hi - lo) * b)), 0, b - 1);
    };
    return (idx(pu, 0.0, 1.0) * b + idx(pw, 0.0, 1.0)) * b + idx(ph, -std::numbers::pi, std::numbers::pi);
  };
  std::vector<double> p(b * b * b, 0.0), q(b * b * b, 0.0);
  long used = 0;
  for (const auto& x : cloud.points) {
    const Vec3 y = mk_hat(x);
    if (!(sym_norm(y) > 1e-300)) continue;
    p[bin(x)] += 1.0;
    q[bin(y)] += 1.0;
    ++used;
  }
  double tv = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) tv += std::abs(p[k] - q[k]);
  return used ? 0.5 * tv / used : 0.0;
}

}  // namespace dhl
