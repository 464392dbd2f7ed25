#include "dhl/green.hpp"

#include "dhl/errors.hpp"
#include "dhl/random.hpp"
#include "dhl/renorm.hpp"
#include "dhl/slice_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dhl {

namespace {
// sum_k 4^-(k+1) log c_k over the normalized orbit; stops after `levels`
// terms, or when the tail bound falls below tol if levels < 0
GreenValue green_series(const Vec3& x0, double tol, int levels) {
  const double nrm = sym_norm(x0);
  if (!(nrm > 0.0)) throw Error(ErrorKind::ZeroVector, "green potential of zero vector");
  Vec3 x = canonical_unit(x0);
  GreenValue g;
  double bound = kLogNormBound;
  double weight = 0.25;
  double sum = 0.0;
  int k = 0;
  for (;; ++k) {
    const double tail = bound * std::pow(0.25, k) / 3.0;
    if (levels >= 0 ? k >= levels : tail < tol) {
      g.tailBound = tail;
      break;
    }
    const Vec3 y = mk_hat(x);
    const double c = sym_norm(y);
    if (!(c > 1e-300)) throw Error(ErrorKind::IndeterminateOrbit, "orbit enters the a+/a- guard ball");
    const double lc = std::log(c);
    if (std::abs(lc) > bound) {
      bound = std::abs(lc);
      g.widened = true;
    }
    sum += weight * lc;
    weight *= 0.25;
    x = y / c;
  }
  g.levelUsed = k;
  g.value = std::log(nrm) + sum;
  return g;
}
}  // namespace

GreenValue green_potential(const Vec3& x, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tol must be positive");
  return green_series(x, tol, -1);
}

GreenValue green_potential_levels(const Vec3& x, int levels) { return green_series(x, 0.0, std::max(levels, 0)); }

double free_energy_per_bond(Complex z, Complex t, int n) {
  return eval_logZ(z, t, n) / (2.0 * std::pow(4.0, n));
}

HermDecayTable herm_norm_decay(int samples, int nMax, const LinearForm& y, std::uint64_t seed,
                               const std::vector<double>& rGrid) {
  if (y.p == Complex(0.0) || y.r == Complex(0.0))
    throw Error(ErrorKind::InvalidArgument, "linear form needs p != 0 and r != 0");
  if (samples < 1 || nMax < 0) throw Error(ErrorKind::InvalidArgument, "bad sample count or level");
  HermDecayTable tab;
  tab.samples = samples;
  tab.rGrid = rGrid.empty() ? std::vector<double>{1e-4, 3e-4, 1e-3, 3e-3, 1e-2, 3e-2, 0.1, 0.3} : rGrid;
  tab.M = std::log(y.norm());
  const int levels = nMax + 1;
  // phi[s * levels + n], NaN for excluded samples
  std::vector<double> phi(static_cast<std::size_t>(samples) * levels, std::numeric_limits<double>::quiet_NaN());
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
#pragma omp parallel for schedule(dynamic)
  for (std::uint64_t ch = 0; ch < chunks; ++ch) {
    auto rng = stream_rng(seed, ch);
    const std::uint64_t end = std::min<std::uint64_t>(samples, (ch + 1) * kChunk);
    for (std::uint64_t s = ch * kChunk; s < end; ++s) {
      Vec3 x = random_unit_vec3(rng);
      double* row = &phi[s * levels];
      bool ok = true;
      double scale = 1.0;
      for (int n = 0; n <= nMax && ok; ++n) {
        const double yv = std::abs(y(x));
        row[n] = yv > 0.0 ? scale * std::log(yv) : -std::numeric_limits<double>::infinity();
        if (n == nMax) break;
        const Vec3 im = mk_hat(x);
        const double c = sym_norm(im);
        if (!(c > 1e-300)) {
          ok = false;
          break;
        }
        x = im / c;
        scale *= 0.25;
      }
      if (!ok)
        for (int n = 0; n < levels; ++n) row[n] = std::numeric_limits<double>::quiet_NaN();
    }
  }
  for (int s = 0; s < samples; ++s)
    if (std::isnan(phi[static_cast<std::size_t>(s) * levels])) ++tab.excluded;

  for (int n = 0; n <= nMax; ++n) {
    HermDecayRow row;
    row.n = n;
    row.upperBound = tab.M * std::pow(0.25, n);
    row.maxSigned = -std::numeric_limits<double>::infinity();
    row.tailFraction.assign(tab.rGrid.size(), 0.0);
    double sum = 0.0, sum2 = 0.0;
    int cnt = 0;
    for (int s = 0; s < samples; ++s) {
      const double v = phi[static_cast<std::size_t>(s) * levels + n];
      if (std::isnan(v)) continue;
      const double a = std::abs(v);
      sum += a;
      sum2 += a * a;
      ++cnt;
      row.maxAbs = std::max(row.maxAbs, a);
      row.maxSigned = std::max(row.maxSigned, v);
      for (std::size_t k = 0; k < tab.rGrid.size(); ++k)
        if (a > tab.rGrid[k]) row.tailFraction[k] += 1.0;
    }
    if (cnt > 0) {
      row.meanAbs = sum / cnt;
      const double var = std::max(0.0, sum2 / cnt - row.meanAbs * row.meanAbs);
      row.stdErr = std::sqrt(var / cnt);
      for (auto& f : row.tailFraction) f /= cnt;
    }
    tab.rows.push_back(row);
  }

  // log P_n(r) ~ a - gamma r 2^n, pooled over rows with a usable tail
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  const int valid = samples - tab.excluded;
  for (const auto& row : tab.rows) {
    if (row.n < 2) continue;
    for (std::size_t k = 0; k < tab.rGrid.size(); ++k) {
      const double f = row.tailFraction[k];
      if (f * valid < 10.0 || f > 0.5) continue;
      const double xv = tab.rGrid[k] * std::pow(2.0, row.n);
      const double yv = std::log(f);
      sx += xv;
      sy += yv;
      sxx += xv * xv;
      sxy += xv * yv;
      ++m;
    }
  }
  const double den = m * sxx - sx * sx;
  tab.fittedGamma = (m >= 3 && den > 0.0) ? -(m * sxy - sx * sy) / den : std::numeric_limits<double>::quiet_NaN();
  return tab;
}

Complex PotentialGrid::param(int i, int j) const {
  const double x = nx > 1 ? rect.xmin + (rect.xmax - rect.xmin) * i / (nx - 1) : rect.xmin;
  const double y = ny > 1 ? rect.ymin + (rect.ymax - rect.ymin) * j / (ny - 1) : rect.ymin;
  return {x, y};
}

PotentialGrid potential_grid(const RationalSlice& slice, const Rect& rect, int nx, int ny, double tol) {
  if (nx < 1 || ny < 1) throw Error(ErrorKind::InvalidArgument, "grid resolution must be positive");
  PotentialGrid g;
  g.slice = slice;
  g.rect = rect;
  g.nx = nx;
  g.ny = ny;
  g.tol = tol;
  g.samples.resize(static_cast<std::size_t>(nx) * ny);
  g.flags.assign(static_cast<std::size_t>(nx) * ny, 0);
#pragma omp parallel for schedule(dynamic)
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t idx = static_cast<std::size_t>(j) * nx + i;
      try {
        const Vec3 x = slice.eval(g.param(i, j));
        g.samples[idx] = green_potential(x, tol);
        if (g.samples[idx].tailBound > tol) g.flags[idx] = 1;
      } catch (const Error&) {
        g.samples[idx].value = std::numeric_limits<double>::quiet_NaN();
        g.flags[idx] = 1;
      }
    }
  }
  return g;
}

DensityGrid laplacian_density(const PotentialGrid& g) {
  DensityGrid d;
  d.nx = g.nx;
  d.ny = g.ny;
  d.mass.assign(static_cast<std::size_t>(g.nx) * g.ny, 0.0);
  if (g.nx < 3 || g.ny < 3) return d;
  const double hx = (g.rect.xmax - g.rect.xmin) / (g.nx - 1);
  const double hy = (g.rect.ymax - g.rect.ymin) / (g.ny - 1);
  double pos = 0.0, neg = 0.0;
  for (int j = 1; j + 1 < g.ny; ++j) {
    for (int i = 1; i + 1 < g.nx; ++i) {
      const double c = g.at(i, j).value;
      const double lap = (g.at(i + 1, j).value + g.at(i - 1, j).value - 2.0 * c) / (hx * hx) +
                         (g.at(i, j + 1).value + g.at(i, j - 1).value - 2.0 * c) / (hy * hy);
      if (!std::isfinite(lap)) continue;
      const double m = lap * hx * hy;
      if (m > 0.0) {
        d.mass[static_cast<std::size_t>(j) * g.nx + i] = m;
        pos += m;
      } else {
        neg -= m;
      }
    }
  }
  if (pos > 0.0)
    for (auto& m : d.mass) m /= pos;
  d.clippedNegative = pos > 0.0 ? neg / pos : 0.0;
  return d;
}

std::vector<Complex> default_probe_set() {
  std::vector<Complex> probes;
  for (const double r : {0.25, 0.4, 2.5, 4.0})
    for (int k = 0; k < 12; ++k) probes.push_back(std::polar(r, 2.0 * std::numbers::pi * (k + 0.5) / 12.0));
  return probes;
}

EquidistResult equidistribution_distance(const RationalSlice& slice, int n, const std::vector<Complex>& probes,
                                         std::optional<Precision> prec) {
  const ZerosResult z = slice_zeros(slice, n, prec);
  const ScaledValue lead = eval_form_orbit(slice.coeff(slice.degree()), n, LinearForm::y0());
  const double logLead = lead.log_abs();
  const double scale = std::pow(0.25, n);
  EquidistResult out;
  for (const auto& s : probes) {
    double md = std::numeric_limits<double>::infinity();
    double acc = 0.0;
    for (const auto& r : z.report.roots) {
      const double dist = std::abs(s - r);
      md = std::min(md, dist);
      acc += std::log(dist);
    }
    if (md < 1e-3) {
      ++out.dropped;
      continue;
    }
    const double approx = scale * (acc + logLead);
    const double g = green_potential(slice.eval(s), 1e-13).value;
    out.distance = std::max(out.distance, std::abs(approx - g));
    ++out.used;
  }
  return out;
}

}  // namespace dhl
