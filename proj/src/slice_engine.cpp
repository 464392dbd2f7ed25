#include "dhl/slice_engine.hpp"

#include "dhl/errors.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace dhl {

RationalSlice advance_slice(const RationalSlice& sl) {
  CPoly u2, v2, w2, s;
#pragma omp parallel sections
  {
#pragma omp section
    u2 = poly_mul(sl.pU, sl.pU);
#pragma omp section
    v2 = poly_mul(sl.pV, sl.pV);
#pragma omp section
    w2 = poly_mul(sl.pW, sl.pW);
#pragma omp section
    {
      const CPoly b = sl.pU + sl.pW;
      s = poly_mul(b, b);
    }
  }
  const CPoly a = u2 + v2;
  const CPoly c = v2 + w2;
  RationalSlice out;
#pragma omp parallel sections
  {
#pragma omp section
    out.pU = poly_mul(a, a);
#pragma omp section
    out.pV = poly_mul(v2, s);
#pragma omp section
    out.pW = poly_mul(c, c);
  }
  const double m = std::max({out.pU.max_abs(), out.pV.max_abs(), out.pW.max_abs()});
  if (!(m > 0.0)) throw Error(ErrorKind::DegenerateSlice, "slice lies in the indeterminacy fiber");
  out.pU /= m;
  out.pV /= m;
  out.pW /= m;
  // R^ is homogeneous of degree 4, so the old factor is raised to the 4th power
  out.logScale = 4.0 * sl.logScale + std::log(m);
  return out;
}

PartitionSlice partition_slice(const RationalSlice& initial, int n, int maxLevel) {
  if (n < 0 || n > maxLevel)
    throw Error(ErrorKind::InvalidArgument, "level " + std::to_string(n) + " outside [0, " + std::to_string(maxLevel) + "]");
  PartitionSlice ps;
  ps.n = n;
  ps.slice = initial;
  for (int k = 0; k < n; ++k) ps.slice = advance_slice(ps.slice);
  ps.zhat = ps.slice.pU + 2.0 * ps.slice.pV + ps.slice.pW;
  ps.logScale = ps.slice.logScale;
  return ps;
}

PartitionSlice partition_slice(const SliceSpec& spec, int n, int maxLevel) {
  return partition_slice(make_slice(spec), n, maxLevel);
}

Complex gibbs_oracle(int n, Complex z, Complex t) {
  if (n < 0 || n > 2) throw Error(ErrorKind::Unsupported, "gibbs_oracle only enumerates levels 0..2");
  // level-n graph: every edge of level n-1 becomes a diamond
  std::vector<std::pair<int, int>> edges{{0, 1}};
  int nv = 2;
  for (int k = 0; k < n; ++k) {
    std::vector<std::pair<int, int>> next;
    for (auto [a, b] : edges) {
      const int m1 = nv++, m2 = nv++;
      next.insert(next.end(), {{a, m1}, {m1, b}, {a, m2}, {m2, b}});
    }
    edges = std::move(next);
  }
  const int ne = static_cast<int>(edges.size());
  std::vector<int> deg(nv, 0);
  for (auto [a, b] : edges) {
    ++deg[a];
    ++deg[b];
  }
  // exponents are bounded by 2|E|, tabulate powers
  std::vector<Complex> zp(2 * ne + 1), tp(ne + 1);
  zp[0] = tp[0] = 1.0;
  for (int k = 1; k <= 2 * ne; ++k) zp[k] = zp[k - 1] * z;
  for (int k = 1; k <= ne; ++k) tp[k] = tp[k - 1] * t;

  Complex sum = 0.0;
  std::vector<int> sigma(nv);
  for (long cfg = 0; cfg < (1L << nv); ++cfg) {
    for (int v = 0; v < nv; ++v) sigma[v] = (cfg >> v) & 1 ? -1 : 1;
    int bond = 0;  // sum sigma sigma'
    for (auto [a, b] : edges) bond += sigma[a] * sigma[b];
    int twiceM = 0;  // magnetic moment, each vertex weighted by deg/2
    for (int v = 0; v < nv; ++v) twiceM += deg[v] * sigma[v];
    // weight t^(-bond/2) z^(-M), times z^|E| t^(|E|/2)
    const int tExp = (ne - bond) / 2;
    const int zExp = ne - twiceM / 2;
    sum += zp[zExp] * tp[tExp];
  }
  return sum;
}

ScaledValue eval_form_orbit(const Vec3& x0, int n, const LinearForm& y) {
  double nrm = sym_norm(x0);
  if (!(nrm > 0.0)) throw Error(ErrorKind::ZeroVector, "orbit of zero vector");
  double logScale = std::log(nrm);
  Vec3 x = x0 / nrm;
  for (int k = 0; k < n; ++k) {
    const Vec3 im = mk_hat(x);
    const double c = sym_norm(im);
    if (!(c > 1e-300)) {
      if (chordal_dist(x, fixed::a_plus().coords()) < kIndeterminacyRadius ||
          chordal_dist(x, fixed::a_minus().coords()) < kIndeterminacyRadius)
        throw Error(ErrorKind::Indeterminate, "orbit reaches a+/a-");
      throw Error(ErrorKind::NumericalUnderflow, "orbit norm underflow");
    }
    logScale = 4.0 * logScale + std::log(c);
    x = im / c;
  }
  return {y(x), logScale};
}

double eval_logZ(Complex z, Complex t, int n) {
  return eval_form_orbit(psi_lift({z, t}), n).log_abs();
}

SliceJet eval_slice_jet(const RationalSlice& sl, int n, const LinearForm& y, Complex s, Precision prec) {
  if (prec == Precision::DoubleDouble) return eval_slice_jet<DDComplex>(sl, n, y, s);
  return eval_slice_jet<Complex>(sl, n, y, s);
}

}  // namespace dhl
