#include "jacfrac/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "jacfrac/errors.hpp"
#include "jacfrac/special.hpp"

namespace jacfrac {

Interval::Interval(double a_, double b_) : a(a_), b(b_) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw DomainError("Interval requires finite endpoints with a < b");
  }
}

JacobiBasis::JacobiBasis(Interval iv, double beta_, double gamma_)
    : interval(iv), beta(beta_), gamma(gamma_) {
  if (!std::isfinite(beta) || !std::isfinite(gamma) || !(beta > -1.0) || !(gamma > -1.0)) {
    throw DomainError("weight exponents must satisfy beta > -1 and gamma > -1");
  }
}

JacobiBasis::JacobiBasis(double a, double b, double beta_, double gamma_)
    : JacobiBasis(Interval(a, b), beta_, gamma_) {}

RecurrenceCoeffs recurrence_coeffs(const JacobiBasis& basis, std::size_t count) {
  const double be = basis.beta;
  const double ga = basis.gamma;
  const double s = be + ga;
  const double mid = 0.5 * (basis.a() + basis.b());
  const double half = 0.5 * basis.length();

  RecurrenceCoeffs rc;
  rc.mu0 = std::pow(basis.length(), s + 1.0) * std::exp(beta(be + 1.0, ga + 1.0).log_abs);
  rc.a.resize(count);
  rc.b.assign(count + 1, 0.0);

  for (std::size_t n = 0; n < count; ++n) {
    double at;  // recurrence center in the reference variable on [-1,1]
    if (n == 0) {
      at = (be - ga) / (s + 2.0);
    } else {
      const double d = 2.0 * static_cast<double>(n) + s;
      at = (be - ga) * (be + ga) / (d * (d + 2.0));
    }
    rc.a[n] = mid + half * at;
  }
  for (std::size_t n = 1; n <= count; ++n) {
    double bt2;
    if (n == 1) {
      // the generic expression has a removable 0/0 at beta+gamma = -1
      bt2 = 4.0 * (be + 1.0) * (ga + 1.0) / ((s + 2.0) * (s + 2.0) * (s + 3.0));
    } else {
      const double nn = static_cast<double>(n);
      const double d = 2.0 * nn + s;
      bt2 = 4.0 * nn * (nn + be) * (nn + ga) * (nn + s) / (d * d * (d + 1.0) * (d - 1.0));
    }
    rc.b[n] = half * std::sqrt(bt2);
  }
  return rc;
}

SignedLogValue delta_n_log(const JacobiBasis& basis, std::size_t n) {
  const double be = basis.beta;
  const double ga = basis.gamma;
  const double s = be + ga;
  const double logL = std::log(basis.length());
  if (n == 0) {
    // written with Gamma(s+2) = (s+1)Gamma(s+1) so the s+1 = 0 case needs no
    // separate branch (the generic formula is a 0*inf form there)
    const double log_abs = -0.5 * (s + 1.0) * logL +
                           0.5 * (log_gamma_signed(s + 2.0).log_abs -
                                  log_gamma_signed(be + 1.0).log_abs -
                                  log_gamma_signed(ga + 1.0).log_abs);
    return {1, log_abs};
  }
  const double nn = static_cast<double>(n);
  const double log_abs = 0.5 * std::log(s + 2.0 * nn + 1.0) - (nn + 0.5 * (s + 1.0)) * logL +
                         0.5 * (log_gamma_signed(s + nn + 1.0).log_abs -
                                log_gamma_signed(nn + 1.0).log_abs -
                                log_gamma_signed(be + nn + 1.0).log_abs -
                                log_gamma_signed(ga + nn + 1.0).log_abs);
  return {(n % 2 == 0) ? 1 : -1, log_abs};
}

double delta_n(const JacobiBasis& basis, std::size_t n) {
  return delta_n_log(basis, n).to_double();
}

namespace detail {

std::vector<double> eval_all_prepared(const RecurrenceCoeffs& rc, std::size_t n_max,
                                      double x) {
  std::vector<double> p(n_max + 1);
  p[0] = 1.0 / std::sqrt(rc.mu0);
  if (n_max == 0) return p;
  p[1] = (x - rc.a[0]) * p[0] / rc.b[1];
  for (std::size_t j = 1; j < n_max; ++j) {
    p[j + 1] = ((x - rc.a[j]) * p[j] - rc.b[j] * p[j - 1]) / rc.b[j + 1];
  }
  return p;
}

double eval_pn_unchecked(const JacobiBasis& basis, std::size_t n, double x) {
  return eval_all_prepared(recurrence_coeffs(basis, n), n, x).back();
}

}  // namespace detail

static void check_in_interval(const JacobiBasis& basis, double x) {
  if (!std::isfinite(x) || x < basis.a() || x > basis.b()) {
    throw DomainError("evaluation point lies outside the basis interval");
  }
}

std::vector<double> eval_all(const JacobiBasis& basis, std::size_t n_max, double x) {
  check_in_interval(basis, x);
  return detail::eval_all_prepared(recurrence_coeffs(basis, n_max), n_max, x);
}

double eval_pn(const JacobiBasis& basis, std::size_t n, double x) {
  check_in_interval(basis, x);
  return detail::eval_pn_unchecked(basis, n, x);
}

SignedLogValue taylor_coeff_log(const JacobiBasis& basis, std::size_t n, std::size_t k) {
  if (k > n) throw std::out_of_range("taylor_coeff requires k <= n");
  const double be = basis.beta;
  const double ga = basis.gamma;
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);

  // factor shared by every term of the endpoint sum (all terms positive)
  const double common = log_gamma_signed(nn + 1.0).log_abs +
                        log_gamma_signed(nn + be + 1.0).log_abs +
                        log_gamma_signed(nn + ga + 1.0).log_abs +
                        log_gamma_signed(kk + 1.0).log_abs -
                        log_gamma_signed(nn - kk + 1.0).log_abs;

  std::vector<double> lg(k + 1);
  double lmax = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= k; ++i) {
    const double ii = static_cast<double>(i);
    lg[i] = -(log_gamma_signed(ii + 1.0).log_abs + log_gamma_signed(be + ii + 1.0).log_abs +
              log_gamma_signed(nn + ga - ii + 1.0).log_abs +
              log_gamma_signed(kk - ii + 1.0).log_abs);
    lmax = std::max(lmax, lg[i]);
  }
  KahanSum acc;
  for (std::size_t i = 0; i <= k; ++i) acc.add(std::exp(lg[i] - lmax));
  const double lse = lmax + std::log(acc.value());

  const double log_abs =
      delta_n_log(basis, n).log_abs + nn * std::log(basis.length()) + common + lse;
  return {1, log_abs};
}

double taylor_coeff(const JacobiBasis& basis, std::size_t n, std::size_t k) {
  return std::exp(taylor_coeff_log(basis, n, k).log_abs);
}

double endpoint_derivative(const JacobiBasis& basis, std::size_t n, std::size_t k,
                           Side end) {
  if (k > n) throw std::out_of_range("endpoint_derivative requires k <= n");
  const double logLk = static_cast<double>(k) * std::log(basis.length());
  if (end == Side::Left) {
    const double sgn = ((n + k) % 2 == 0) ? 1.0 : -1.0;
    return sgn * std::exp(taylor_coeff_log(basis, n, k).log_abs - logLk);
  }
  return std::exp(taylor_coeff_log(basis.swapped(), n, k).log_abs - logLk);
}

BasisRange basis_range(double beta, double gamma) {
  if (!std::isfinite(beta) || !std::isfinite(gamma) || beta < -0.5 || gamma < -0.5) {
    throw DomainError("basis_range requires beta >= -1/2 and gamma >= -1/2");
  }
  auto upper_term = [](double e) {
    const double d = 2.0 * e + 1.0;
    if (d <= 0.0) return std::numeric_limits<double>::infinity();
    return (e + 1.0) / d;
  };
  BasisRange r;
  r.m_upper = 4.0 * std::min(upper_term(beta), upper_term(gamma));
  r.M_lower =
      4.0 * std::max((beta + 1.0) / (2.0 * beta + 3.0), (gamma + 1.0) / (2.0 * gamma + 3.0));
  return r;
}

bool lemma1_admissible(double beta, double gamma, double p) {
  if (beta < -0.5 || beta > 0.5 || gamma < -0.5 || gamma > 0.5) return false;
  if (!(p > 1.0)) return false;
  const BasisRange r = basis_range(beta, gamma);
  return r.M_lower < p && p < r.m_upper;
}

namespace detail {

SignedLogValue taylor_coeff_log_product(const JacobiBasis& basis, std::size_t n,
                                        std::size_t k) {
  if (k > n) throw std::out_of_range("taylor_coeff requires k <= n");
  const double log_delta = delta_n_log(basis, n).log_abs;
  if (n == 0) return {1, log_delta};
  const double be = basis.beta;
  const double s = be + basis.gamma;
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  const double log_abs = log_delta + nn * std::log(basis.length()) +
                         log_gamma_signed(nn + 1.0).log_abs +
                         log_gamma_signed(nn + s + kk + 1.0).log_abs +
                         log_gamma_signed(nn + be + 1.0).log_abs -
                         log_gamma_signed(nn + s + 1.0).log_abs -
                         log_gamma_signed(nn - kk + 1.0).log_abs -
                         log_gamma_signed(be + kk + 1.0).log_abs;
  return {1, log_abs};
}

double taylor_coeff_ratio(double beta, double gamma, std::size_t n, std::size_t k) {
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  return (nn + beta + gamma + kk + 1.0) * (nn - kk) / (beta + kk + 1.0);
}

double leading_coeff_log(const JacobiBasis& basis, std::size_t n) {
  const double log_delta = delta_n_log(basis, n).log_abs;
  if (n == 0) return log_delta;
  const double s = basis.beta + basis.gamma;
  const double nn = static_cast<double>(n);
  return log_delta + log_gamma_signed(2.0 * nn + s + 1.0).log_abs -
         log_gamma_signed(nn + s + 1.0).log_abs;
}

}  // namespace detail

}  // namespace jacfrac
