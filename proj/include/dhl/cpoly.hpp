#pragma once

#include <Eigen/Core>

#include <complex>
#include <initializer_list>
#include <utility>
#include <vector>

namespace dhl {

using Complex = std::complex<double>;

// Dense polynomial, lowest degree first. Formal degree is size-1; a zero
// leading coefficient is only kept when the polynomial is marked padded.
class CPoly {
 public:
  CPoly();
  explicit CPoly(Eigen::VectorXcd coeffs, bool padded = false);
  CPoly(std::initializer_list<Complex> coeffs);

  static CPoly zero(int degree);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Eigen::VectorXcd& coeffs() const { return c_; }
  Complex operator[](int k) const { return c_[k]; }
  Complex leading() const { return c_[c_.size() - 1]; }
  bool padded() const { return padded_; }
  bool is_zero() const;
  double max_abs() const;
  double norm() const { return c_.norm(); }

  // degree ignoring trailing coefficients below rel * max_abs()
  int effective_degree(double rel = 0.0) const;

  Complex operator()(Complex s) const;
  std::pair<Complex, Complex> eval_with_derivative(Complex s) const;
  // p(s)/p'(s) without overflow for large |s|
  Complex newton_ratio(Complex s) const;
  // sum |a_k| |s|^k, the natural scale of a forward residual
  double abs_eval(double r) const;

  CPoly derivative() const;
  CPoly reversed() const;
  CPoly conj_reversed() const;

  CPoly& operator*=(Complex a);
  CPoly& operator/=(double a);
  friend CPoly operator+(const CPoly& a, const CPoly& b);
  friend CPoly operator-(const CPoly& a, const CPoly& b);
  friend CPoly operator*(Complex a, const CPoly& p);

 private:
  void fix_padding();
  Eigen::VectorXcd c_;
  bool padded_ = false;
};

// FFT error is relative to the largest coefficient; partition polynomials
// span hundreds of decades, so below this the schoolbook product is used
inline constexpr int kFftThreshold = 8192;

CPoly poly_mul(const CPoly& a, const CPoly& b);
CPoly poly_mul_schoolbook(const CPoly& a, const CPoly& b);
CPoly poly_mul_fft(const CPoly& a, const CPoly& b);
CPoly poly_from_roots(const std::vector<Complex>& roots, Complex lead = 1.0);

}  // namespace dhl
