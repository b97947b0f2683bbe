#include "netred/polyrat.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace netred {

namespace {

std::vector<double> trim_trailing_zeros(std::vector<double> c) {
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  if (c.empty()) c.push_back(0.0);
  return c;
}

}  // namespace

Polynomial::Polynomial(std::vector<double> coeffs)
    : coeffs_(trim_trailing_zeros(std::move(coeffs))) {}

std::complex<double> Polynomial::operator()(std::complex<double> s) const {
  std::complex<double> acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

double Polynomial::operator()(double s) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

double Polynomial::eval_scale(std::complex<double> s) const {
  const double r = std::abs(s);
  double acc = 0.0;
  double rk = 1.0;
  for (double c : coeffs_) {
    acc += std::abs(c) * rk;
    rk *= r;
  }
  return acc;
}

std::vector<std::complex<double>> Polynomial::roots() const {
  const int n = degree();
  if (n <= 0 || is_zero()) return {};
  // Companion matrix of the monic polynomial.
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  const double lead = coeffs_.back();
  for (int i = 0; i < n - 1; ++i) companion(i + 1, i) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -coeffs_[i] / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  std::vector<std::complex<double>> out(n);
  for (int i = 0; i < n; ++i) out[i] = solver.eigenvalues()(i);
  std::sort(out.begin(), out.end(), [](auto a, auto b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

Polynomial Polynomial::from_roots(const std::vector<std::complex<double>>& roots,
                                  double leading) {
  std::vector<double> acc{leading};
  std::vector<char> used(roots.size(), 0);
  auto mul_linear = [&acc](double r) {
    // acc *= (s - r)
    std::vector<double> next(acc.size() + 1, 0.0);
    for (std::size_t k = 0; k < acc.size(); ++k) {
      next[k + 1] += acc[k];
      next[k] += -r * acc[k];
    }
    acc = std::move(next);
  };
  auto mul_quadratic = [&acc](double b, double c) {
    // acc *= (s^2 + b s + c)
    std::vector<double> next(acc.size() + 2, 0.0);
    for (std::size_t k = 0; k < acc.size(); ++k) {
      next[k + 2] += acc[k];
      next[k + 1] += b * acc[k];
      next[k] += c * acc[k];
    }
    acc = std::move(next);
  };
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    const auto r = roots[i];
    const double imag_tol = 1e-10 * (1.0 + std::abs(r));
    if (std::abs(r.imag()) <= imag_tol) {
      mul_linear(r.real());
      used[i] = 1;
      continue;
    }
    // Find the closest unused near-conjugate.
    std::size_t best = roots.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(roots[j] - std::conj(r));
      if (d < best_dist) {
        best_dist = d;
        best = j;
      }
    }
    if (best < roots.size() && best_dist <= 1e-6 * (1.0 + std::abs(r))) {
      const auto rc = roots[best];
      mul_quadratic(-(r.real() + rc.real()), (r * rc).real());
      used[i] = used[best] = 1;
    } else {
      // Unpaired complex root of a real polynomial: numerical artifact,
      // keep the real projection.
      mul_linear(r.real());
      used[i] = 1;
    }
  }
  return Polynomial(std::move(acc));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] += b.coeffs_[i];
  return Polynomial(std::move(c));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[i] -= b.coeffs_[i];
  return Polynomial(std::move(c));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return Polynomial();
  std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
      c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial operator*(double c, const Polynomial& p) {
  std::vector<double> out = p.coeffs_;
  for (double& x : out) x *= c;
  return Polynomial(std::move(out));
}

RationalFunction::RationalFunction() : num_(), den_(Polynomial::constant(1.0)) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero())
    throw std::invalid_argument("RationalFunction: zero denominator");
  normalize();
}

void RationalFunction::normalize() {
  const double lead = den_.leading();
  if (lead != 1.0) {
    num_ = (1.0 / lead) * num_;
    den_ = (1.0 / lead) * den_;
    // Pin the leading coefficient exactly.
    auto dc = den_.coeffs();
    dc.back() = 1.0;
    den_ = Polynomial(std::move(dc));
  }
  if (num_.is_zero()) den_ = Polynomial::constant(1.0);
}

RationalFunction RationalFunction::constant(double c) {
  return RationalFunction(Polynomial::constant(c), Polynomial::constant(1.0));
}

RationalFunction RationalFunction::integrator() {
  return RationalFunction(Polynomial::constant(1.0), Polynomial::variable());
}

std::complex<double> RationalFunction::eval(std::complex<double> s0,
                                            double pole_tol) const {
  const std::complex<double> d = den_(s0);
  if (std::abs(d) <= pole_tol * den_.eval_scale(s0))
    throw PoleAtPoint("rational function evaluated at a pole");
  return num_(s0) / d;
}

std::complex<double> RationalFunction::eval_reciprocal(std::complex<double> s0,
                                                       double pole_tol) const {
  const std::complex<double> nv = num_(s0);
  if (std::abs(nv) <= pole_tol * num_.eval_scale(s0))
    throw PoleAtPoint("reciprocal evaluated at a zero of the numerator");
  return den_(s0) / nv;
}

RationalFunction RationalFunction::reciprocal() const {
  if (num_.is_zero()) throw ZeroFunction("reciprocal of the zero function");
  return RationalFunction(den_, num_).simplified();
}

namespace {

// Greedy matching of numerator roots to denominator roots within the
// relative tolerance; returns indices to drop on each side.
struct RootMatch {
  std::vector<char> drop_num, drop_den;
  int count = 0;
};

RootMatch match_roots(const std::vector<std::complex<double>>& rn,
                      const std::vector<std::complex<double>>& rd,
                      double eps_cancel) {
  RootMatch m;
  m.drop_num.assign(rn.size(), 0);
  m.drop_den.assign(rd.size(), 0);
  for (std::size_t i = 0; i < rn.size(); ++i) {
    std::size_t best = rd.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < rd.size(); ++j) {
      if (m.drop_den[j]) continue;
      const double d = std::abs(rn[i] - rd[j]);
      if (d < best_dist) {
        best_dist = d;
        best = j;
      }
    }
    if (best < rd.size()) {
      const double scale = 1.0 + std::max(std::abs(rn[i]), std::abs(rd[best]));
      if (best_dist <= eps_cancel * scale) {
        m.drop_num[i] = 1;
        m.drop_den[best] = 1;
        ++m.count;
      }
    }
  }
  return m;
}

// Probe points away from the origin; scaled to the root magnitudes so that
// agreement is checked where the function carries information.
std::vector<std::complex<double>> probe_points(double radius) {
  using namespace std::complex_literals;
  return {radius * (0.83 + 0.56i), radius * (-0.37 + 1.21i),
          radius * (1.47 - 0.92i)};
}

bool probes_agree(const Polynomial& n0, const Polynomial& d0,
                  const Polynomial& n1, const Polynomial& d1, double radius) {
  constexpr double tol = 1e-6;
  for (const auto& s : probe_points(radius)) {
    const auto dv0 = d0(s);
    const auto dv1 = d1(s);
    if (std::abs(dv0) <= 1e-12 * d0.eval_scale(s)) return false;
    if (std::abs(dv1) <= 1e-12 * d1.eval_scale(s)) return false;
    const auto v0 = n0(s) / dv0;
    const auto v1 = n1(s) / dv1;
    if (std::abs(v0 - v1) > tol * (std::abs(v0) + 1e-300)) return false;
  }
  return true;
}

}  // namespace

RationalFunction RationalFunction::simplified(double eps_cancel) const {
  if (num_.is_zero()) return RationalFunction();
  Polynomial n = num_;
  Polynomial d = den_;
  // Cancel matched root pairs until none are accepted.
  for (;;) {
    if (n.degree() == 0 || d.degree() == 0) break;
    const auto rn = n.roots();
    const auto rd = d.roots();
    const auto m = match_roots(rn, rd, eps_cancel);
    if (m.count == 0) break;
    std::vector<std::complex<double>> keep_n, keep_d;
    for (std::size_t i = 0; i < rn.size(); ++i)
      if (!m.drop_num[i]) keep_n.push_back(rn[i]);
    for (std::size_t j = 0; j < rd.size(); ++j)
      if (!m.drop_den[j]) keep_d.push_back(rd[j]);
    const Polynomial cand_n = Polynomial::from_roots(keep_n, n.leading());
    const Polynomial cand_d = Polynomial::from_roots(keep_d, d.leading());
    double radius = 1.0;
    for (const auto& r : rn) radius = std::max(radius, std::abs(r));
    for (const auto& r : rd) radius = std::max(radius, std::abs(r));
    if (!probes_agree(n, d, cand_n, cand_d, radius)) break;
    n = cand_n;
    d = cand_d;
  }
  return RationalFunction(std::move(n), std::move(d));
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  Polynomial n = a.num_ * b.den_ + b.num_ * a.den_;
  Polynomial d = a.den_ * b.den_;
  return RationalFunction(std::move(n), std::move(d)).simplified();
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  Polynomial n = a.num_ * b.num_;
  Polynomial d = a.den_ * b.den_;
  return RationalFunction(std::move(n), std::move(d)).simplified();
}

}  // namespace netred
