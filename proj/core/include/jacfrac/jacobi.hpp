#pragma once

#include <cstddef>
#include <vector>

#include "jacfrac/signed_log.hpp"

namespace jacfrac {

// Which endpoint of the interval an operation is anchored at.  For the
// fractional operators Left means "from a" (I_{a+}) and Right means "to b"
// (I_{b-}); for endpoint data it simply names the endpoint itself.
enum class Side { Left, Right };

struct Interval {
  double a{0.0};
  double b{1.0};

  Interval() = default;
  Interval(double a_, double b_);  // throws DomainError unless a < b

  double length() const { return b - a; }
};

// Orthonormal Jacobi basis on [a,b] for the weight (x-a)^beta (b-x)^gamma.
// Immutable after construction; every operation on it is pure.
struct JacobiBasis {
  Interval interval;
  double beta{0.0};
  double gamma{0.0};

  JacobiBasis() = default;
  JacobiBasis(Interval iv, double beta_, double gamma_);
  JacobiBasis(double a, double b, double beta_, double gamma_);

  double a() const { return interval.a; }
  double b() const { return interval.b; }
  double length() const { return interval.length(); }

  // Same interval, weight exponents swapped.  The right-endpoint formulas for
  // this basis are the left-endpoint formulas of the swapped one.
  JacobiBasis swapped() const { return JacobiBasis(interval, gamma, beta); }
};

// The (M, m) window of Lebesgue exponents for which the system keeps the
// Schauder-basis property in the weighted L_p space.  m_upper may be +inf.
struct BasisRange {
  double M_lower{0.0};
  double m_upper{0.0};
};

// Three-term recurrence data for the orthonormal polynomials on [a,b]:
//   p_0 = 1/sqrt(mu0)
//   b_{j+1} p_{j+1} = (x - a_j) p_j - b_j p_{j-1}
// a[] holds a_0..a_{count-1}; b[] holds b_0..b_count with b_0 = 0 unused.
struct RecurrenceCoeffs {
  std::vector<double> a;
  std::vector<double> b;
  double mu0{1.0};
};

// Coefficients a_0..a_{count-1}, b_1..b_count and the weight mass mu0.
RecurrenceCoeffs recurrence_coeffs(const JacobiBasis& basis, std::size_t count);

// Normalization multiplier delta_n, including its (-1)^n sign and the
// (b-a)^{-n-(beta+gamma+1)/2} scale.  delta_n_log carries it in signed-log
// form for use inside larger products.
double delta_n(const JacobiBasis& basis, std::size_t n);
SignedLogValue delta_n_log(const JacobiBasis& basis, std::size_t n);

// Orthonormal polynomial values.  eval_pn checks x in [a,b] (DomainError
// otherwise); eval_all returns p_0..p_{n_max} in one recurrence sweep.
double eval_pn(const JacobiBasis& basis, std::size_t n, double x);
std::vector<double> eval_all(const JacobiBasis& basis, std::size_t n_max, double x);

// Endpoint Taylor data: the positive quantity
//   c(n,k) = (-1)^{n+k} p_n^{(k)}(a) (b-a)^k
// for this basis; the same quantity for the swapped basis gives the right
// endpoint via p_n^{(k)}(b) (b-a)^k = c_swapped(n,k).  Throws
// std::out_of_range when k > n.  All terms of the defining sum share one
// sign, so the log form is exact to rounding (log-sum-exp over the i-sum).
double taylor_coeff(const JacobiBasis& basis, std::size_t n, std::size_t k);
SignedLogValue taylor_coeff_log(const JacobiBasis& basis, std::size_t n, std::size_t k);

// k-th derivative of p_n at the chosen endpoint, via the closed endpoint sums
// (not finite differences).  Throws std::out_of_range when k > n.
double endpoint_derivative(const JacobiBasis& basis, std::size_t n, std::size_t k,
                           Side end);

// Pollard window (M, m) for the basis property; beta = -1/2 or gamma = -1/2
// maps the upper bound to +inf.  Requires beta, gamma >= -1/2 (DomainError).
BasisRange basis_range(double beta, double gamma);

// True iff beta, gamma lie in [-1/2, 1/2] and M(beta,gamma) < p < m(beta,gamma).
bool lemma1_admissible(double beta, double gamma, double p);

namespace detail {

// Forward recurrence without the interval check; rc must cover n_max.
std::vector<double> eval_all_prepared(const RecurrenceCoeffs& rc, std::size_t n_max,
                                      double x);

// Like eval_pn but skips the x-in-[a,b] check (finite-difference probes may
// step just outside the interval).
double eval_pn_unchecked(const JacobiBasis& basis, std::size_t n, double x);

// Closed product form of taylor_coeff (no i-sum); equal to taylor_coeff_log
// up to rounding and cheaper when only ratios matter.
SignedLogValue taylor_coeff_log_product(const JacobiBasis& basis, std::size_t n,
                                        std::size_t k);

// Ratio c(n,k+1)/c(n,k) as a short rational; exact building block for
// compensated term generation.  Requires k < n.
double taylor_coeff_ratio(double beta, double gamma, std::size_t n, std::size_t k);

// log of the (positive) leading coefficient of p_n.
double leading_coeff_log(const JacobiBasis& basis, std::size_t n);

}  // namespace detail

}  // namespace jacfrac
