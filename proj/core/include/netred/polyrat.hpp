#pragma once

#include <complex>
#include <vector>

#include "netred/errors.hpp"

namespace netred {

/// Real-coefficient polynomial, coefficients stored in ascending degree.
/// The leading coefficient is nonzero except for the zero polynomial,
/// whose canonical form is the single coefficient [0].
class Polynomial {
 public:
  /// Zero polynomial.
  Polynomial() : coeffs_{0.0} {}

  /// From ascending coefficients; trailing exact zeros are trimmed.
  explicit Polynomial(std::vector<double> coeffs);

  static Polynomial constant(double c) { return Polynomial({c}); }
  /// The indeterminate s.
  static Polynomial variable() { return Polynomial({0.0, 1.0}); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
  double leading() const { return coeffs_.back(); }
  const std::vector<double>& coeffs() const { return coeffs_; }

  /// Horner evaluation.
  std::complex<double> operator()(std::complex<double> s) const;
  double operator()(double s) const;

  /// Sum of |c_k| |s|^k: the magnitude against which cancellation in
  /// Horner evaluation at s is measured.
  double eval_scale(std::complex<double> s) const;

  /// All complex roots, via eigenvalues of the companion matrix.
  std::vector<std::complex<double>> roots() const;

  /// Real polynomial with the given root multiset (conjugates are paired
  /// into quadratic factors) scaled by `leading`.
  static Polynomial from_roots(const std::vector<std::complex<double>>& roots,
                               double leading);

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double c, const Polynomial& p);

  bool operator==(const Polynomial& other) const = default;

 private:
  std::vector<double> coeffs_;
};

/// Tolerances for rational-function canonicalization.
inline constexpr double kDefaultCancelTol = 1e-9;  // root-matching distance
inline constexpr double kDefaultPoleTol = 1e-12;   // |den(s0)| vs eval scale

/// Ratio of two real polynomials. The denominator is never the zero
/// polynomial and is kept monic, so equal functions built through
/// simplify() compare structurally equal.
class RationalFunction {
 public:
  /// The zero function 0/1.
  RationalFunction();
  RationalFunction(Polynomial num, Polynomial den);

  static RationalFunction constant(double c);
  static RationalFunction one() { return constant(1.0); }
  /// 1/s.
  static RationalFunction integrator();

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  /// deg(num) <= deg(den).
  bool is_proper() const { return num_.degree() <= den_.degree(); }

  /// num(s0)/den(s0). Throws PoleAtPoint when den(s0) is numerically zero
  /// relative to its evaluation scale.
  std::complex<double> eval(std::complex<double> s0,
                            double pole_tol = kDefaultPoleTol) const;

  /// den(s0)/num(s0) without forming the reciprocal's coefficients.
  /// Throws PoleAtPoint when s0 is (numerically) a zero of num.
  std::complex<double> eval_reciprocal(std::complex<double> s0,
                                       double pole_tol = kDefaultPoleTol) const;

  /// den/num. Throws ZeroFunction when num is the zero polynomial.
  RationalFunction reciprocal() const;

  /// Cancels common factors whose roots match within eps_cancel (relative
  /// to root magnitude). A cancellation is accepted only if the reduced
  /// function agrees with the original at three probe points; otherwise the
  /// input is returned untouched (denominator made monic either way).
  /// Idempotent.
  RationalFunction simplified(double eps_cancel = kDefaultCancelTol) const;

  friend RationalFunction operator+(const RationalFunction& a,
                                    const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a,
                                    const RationalFunction& b);

  bool operator==(const RationalFunction& other) const = default;

 private:
  Polynomial num_;
  Polynomial den_;  // monic

  void normalize();
};

}  // namespace netred
