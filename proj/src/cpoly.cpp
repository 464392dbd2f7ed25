#include "dhl/cpoly.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>

namespace dhl {

CPoly::CPoly() : c_(Eigen::VectorXcd::Zero(1)) {}

CPoly::CPoly(Eigen::VectorXcd coeffs, bool padded) : c_(std::move(coeffs)), padded_(padded) {
  if (c_.size() == 0) c_ = Eigen::VectorXcd::Zero(1);
  if (!padded_) {
    Eigen::Index n = c_.size();
    while (n > 1 && c_[n - 1] == Complex(0.0)) --n;
    c_.conservativeResize(n);
  }
  fix_padding();
}

CPoly::CPoly(std::initializer_list<Complex> coeffs)
    : CPoly(Eigen::Map<const Eigen::VectorXcd>(coeffs.begin(), static_cast<Eigen::Index>(coeffs.size()))) {}

CPoly CPoly::zero(int degree) { return CPoly(Eigen::VectorXcd::Zero(degree + 1), true); }

void CPoly::fix_padding() { padded_ = padded_ && c_.size() > 1 && leading() == Complex(0.0); }

bool CPoly::is_zero() const { return (c_.array() == Complex(0.0)).all(); }

double CPoly::max_abs() const { return c_.cwiseAbs().maxCoeff(); }

int CPoly::effective_degree(double rel) const {
  const double thr = rel * max_abs();
  int d = degree();
  while (d > 0 && std::abs(c_[d]) <= thr) --d;
  return d;
}

Complex CPoly::operator()(Complex s) const { return eval_with_derivative(s).first; }

std::pair<Complex, Complex> CPoly::eval_with_derivative(Complex s) const {
  Complex p = 0.0, dp = 0.0;
  for (Eigen::Index k = c_.size() - 1; k >= 0; --k) {
    dp = dp * s + p;
    p = p * s + c_[k];
  }
  return {p, dp};
}

Complex CPoly::newton_ratio(Complex s) const {
  const int d = degree();
  if (std::abs(s) <= 1.0) {
    auto [p, dp] = eval_with_derivative(s);
    return p / dp;
  }
  // p(s) = s^d q(w), w = 1/s, q the reversal
  const Complex w = 1.0 / s;
  Complex q = 0.0, dq = 0.0;
  for (Eigen::Index k = 0; k < c_.size(); ++k) {
    dq = dq * w + q;
    q = q * w + c_[k];
  }
  return s / (static_cast<double>(d) - w * dq / q);
}

double CPoly::abs_eval(double r) const {
  double acc = 0.0;
  for (Eigen::Index k = c_.size() - 1; k >= 0; --k) acc = acc * r + std::abs(c_[k]);
  return acc;
}

CPoly CPoly::derivative() const {
  if (degree() == 0) return CPoly();
  Eigen::VectorXcd d(c_.size() - 1);
  for (Eigen::Index k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<double>(k);
  return CPoly(d, true);
}

CPoly CPoly::reversed() const { return CPoly(c_.reverse().eval(), true); }

CPoly CPoly::conj_reversed() const { return CPoly(c_.reverse().conjugate().eval(), true); }

CPoly& CPoly::operator*=(Complex a) {
  c_ *= a;
  return *this;
}

CPoly& CPoly::operator/=(double a) {
  c_ /= a;
  return *this;
}

namespace {
Eigen::VectorXcd padded_to(const Eigen::VectorXcd& v, Eigen::Index n) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  out.head(v.size()) = v;
  return out;
}
}  // namespace

CPoly operator+(const CPoly& a, const CPoly& b) {
  const Eigen::Index n = std::max(a.c_.size(), b.c_.size());
  return CPoly(padded_to(a.c_, n) + padded_to(b.c_, n), true);
}

CPoly operator-(const CPoly& a, const CPoly& b) {
  const Eigen::Index n = std::max(a.c_.size(), b.c_.size());
  return CPoly(padded_to(a.c_, n) - padded_to(b.c_, n), true);
}

CPoly operator*(Complex a, const CPoly& p) {
  CPoly r = p;
  r *= a;
  return r;
}

CPoly poly_mul_schoolbook(const CPoly& a, const CPoly& b) {
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(x.size() + y.size() - 1);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] == Complex(0.0)) continue;
    out.segment(i, y.size()) += x[i] * y;
  }
  return CPoly(out, true);
}

CPoly poly_mul_fft(const CPoly& a, const CPoly& b) {
  const Eigen::Index n = a.coeffs().size() + b.coeffs().size() - 1;
  Eigen::Index m = 1;
  while (m < n) m <<= 1;
  std::vector<Complex> fa(m, 0.0), fb(m, 0.0), ta, tb;
  std::copy(a.coeffs().begin(), a.coeffs().end(), fa.begin());
  std::copy(b.coeffs().begin(), b.coeffs().end(), fb.begin());
  Eigen::FFT<double> fft;
  fft.fwd(ta, fa);
  fft.fwd(tb, fb);
  for (Eigen::Index k = 0; k < m; ++k) ta[k] *= tb[k];
  fft.inv(fa, ta);
  Eigen::VectorXcd out(n);
  for (Eigen::Index k = 0; k < n; ++k) out[k] = fa[k];
  return CPoly(out, true);
}

CPoly poly_mul(const CPoly& a, const CPoly& b) {
  if (std::min(a.degree(), b.degree()) < kFftThreshold) return poly_mul_schoolbook(a, b);
  return poly_mul_fft(a, b);
}

CPoly poly_from_roots(const std::vector<Complex>& roots, Complex lead) {
  // Leja order; sorted input gives partial products with huge cancelling coefficients
  std::vector<Complex> order(roots);
  std::vector<double> logDist(order.size(), 0.0);
  for (std::size_t k = 0; k < order.size(); ++k) {
    std::size_t best = k;
    for (std::size_t j = k + 1; j < order.size(); ++j) {
      const bool better = k == 0 ? std::abs(order[j]) > std::abs(order[best]) : logDist[j] > logDist[best];
      if (better) best = j;
    }
    std::swap(order[k], order[best]);
    std::swap(logDist[k], logDist[best]);
    for (std::size_t j = k + 1; j < order.size(); ++j) logDist[j] += std::log(std::abs(order[j] - order[k]));
  }
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(roots.size() + 1);
  c[0] = lead;
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (Eigen::Index j = static_cast<Eigen::Index>(k) + 1; j >= 1; --j) c[j] = c[j - 1] - order[k] * c[j];
    c[0] = -order[k] * c[0];
  }
  return CPoly(c, true);
}

}  // namespace dhl
