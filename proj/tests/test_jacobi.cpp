#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "jacfrac/errors.hpp"
#include "jacfrac/jacobi.hpp"
#include "jacfrac/quadrature.hpp"
#include "oracle_utils.hpp"

using namespace jacfrac;

namespace {

const std::vector<JacobiBasis> kBases = {
    JacobiBasis(0, 1, 0, 0),
    JacobiBasis(0, 1, 0.3, 0.3),
    JacobiBasis(0, 1, -0.4, 0.25),
    JacobiBasis(-2, 3, 0.5, -0.5),
};

}  // namespace

TEST_CASE("interval and basis constructors validate their inputs") {
  CHECK_THROWS_AS(Interval(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(Interval(2.0, -1.0), DomainError);
  CHECK_THROWS_AS(Interval(0.0, std::numeric_limits<double>::infinity()), DomainError);
  CHECK_THROWS_AS(JacobiBasis(0, 1, -1.0, 0.0), DomainError);
  CHECK_THROWS_AS(JacobiBasis(0, 1, 0.0, -1.5), DomainError);
  const JacobiBasis b(0, 2, 0.25, -0.5);
  CHECK(b.length() == 2.0);
  const JacobiBasis s = b.swapped();
  CHECK(s.beta == -0.5);
  CHECK(s.gamma == 0.25);
  CHECK(s.a() == 0.0);
  CHECK(s.b() == 2.0);
}

TEST_CASE("recurrence coefficients reproduce the Legendre closed form") {
  const JacobiBasis leg(-1, 1, 0, 0);
  const RecurrenceCoeffs rc = recurrence_coeffs(leg, 12);
  CHECK(rc.mu0 == doctest::Approx(2.0).epsilon(1e-14));
  for (std::size_t j = 0; j < 12; ++j) {
    CHECK(std::fabs(rc.a[j]) <= 1e-14);
    if (j >= 1) {
      const double jj = static_cast<double>(j);
      const double ref = jj / std::sqrt(4.0 * jj * jj - 1.0);
      CHECK(rc.b[j] == doctest::Approx(ref).epsilon(1e-13));
    }
  }
  // affine shift: midpoints and half-length scaling
  const JacobiBasis shifted(0, 1, 0, 0);
  const RecurrenceCoeffs rs = recurrence_coeffs(shifted, 6);
  CHECK(rs.mu0 == doctest::Approx(1.0).epsilon(1e-14));
  for (std::size_t j = 0; j < 6; ++j) {
    CHECK(rs.a[j] == doctest::Approx(0.5).epsilon(1e-13));
    if (j >= 1) CHECK(rs.b[j] == doctest::Approx(0.5 * rc.b[j]).epsilon(1e-12));
  }
}

TEST_CASE("eval_pn matches the classical-recurrence oracle") {
  for (const JacobiBasis& basis : kBases) {
    double worst = 0.0;
    for (std::size_t n = 0; n <= 15; ++n) {
      for (int i = 0; i <= 20; ++i) {
        const double x = basis.a() + basis.length() * i / 20.0;
        const double mine = eval_pn(basis, n, x);
        const double ref = static_cast<double>(oracle::ortho_pn(basis, n, x));
        worst = std::max(worst, std::fabs(mine - ref) / std::max(1.0, std::fabs(ref)));
      }
    }
    CHECK(worst <= 1e-11);
  }
}

TEST_CASE("eval_all agrees with per-degree evaluation") {
  const JacobiBasis basis(0, 1, 0.3, -0.2);
  for (double x : {0.0, 0.123, 0.5, 0.987, 1.0}) {
    const std::vector<double> all = eval_all(basis, 14, x);
    REQUIRE(all.size() == 15);
    for (std::size_t n = 0; n <= 14; ++n) {
      CHECK(all[n] == doctest::Approx(eval_pn(basis, n, x)).epsilon(1e-14));
    }
  }
  CHECK_THROWS_AS((void)eval_pn(basis, 3, 1.5), DomainError);
  CHECK_THROWS_AS((void)eval_all(basis, 3, -0.1), DomainError);
  // the unchecked variant tolerates finite-difference probes just outside
  CHECK(std::isfinite(detail::eval_pn_unchecked(basis, 3, 1.0 + 1e-7)));
}

TEST_CASE("the system is orthonormal under its own Gauss rule") {
  for (const JacobiBasis& basis : kBases) {
    const QuadratureRule rule = gauss_jacobi(basis, 16);
    std::vector<std::vector<double>> vals(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      vals[i] = eval_all(basis, 12, rule.nodes[i]);
    }
    double worst = 0.0;
    for (std::size_t m = 0; m <= 12; ++m) {
      for (std::size_t n = 0; n <= m; ++n) {
        double acc = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
          acc += rule.weights[i] * vals[i][m] * vals[i][n];
        }
        worst = std::max(worst, std::fabs(acc - (m == n ? 1.0 : 0.0)));
      }
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("delta_n carries the alternating sign and its log form agrees") {
  for (const JacobiBasis& basis : kBases) {
    for (std::size_t n = 0; n <= 10; ++n) {
      const double d = delta_n(basis, n);
      const SignedLogValue dl = delta_n_log(basis, n);
      CHECK(dl.sign == ((n % 2 == 0) ? 1 : -1));
      CHECK((d > 0) == (n % 2 == 0));
      CHECK(std::fabs(dl.to_double() - d) <= 1e-12 * std::fabs(d));
    }
  }
}

TEST_CASE("taylor_coeff encodes the endpoint value and ratio structure") {
  for (const JacobiBasis& basis : kBases) {
    for (std::size_t n = 0; n <= 12; ++n) {
      // c(n,0) = (-1)^n p_n(a)
      const double pa = eval_pn(basis, n, basis.a());
      const double sign = (n % 2 == 0) ? 1.0 : -1.0;
      const double c0 = taylor_coeff(basis, n, 0);
      CHECK(c0 > 0.0);
      CHECK(std::fabs(sign * c0 - pa) <= 1e-11 * std::max(1.0, std::fabs(pa)));
      for (std::size_t k = 0; k + 1 <= n; ++k) {
        // consecutive-ratio consistency between the three representations
        const double r = detail::taylor_coeff_ratio(basis.beta, basis.gamma, n, k);
        const double direct = taylor_coeff(basis, n, k + 1) / taylor_coeff(basis, n, k);
        CHECK(std::fabs(r - direct) <= 1e-10 * std::fabs(direct));
        const SignedLogValue lp = detail::taylor_coeff_log_product(basis, n, k);
        CHECK(std::fabs(lp.to_double() - taylor_coeff(basis, n, k)) <=
              1e-10 * taylor_coeff(basis, n, k));
      }
    }
  }
  CHECK_THROWS_AS((void)taylor_coeff(kBases[0], 3, 4), std::out_of_range);
}

TEST_CASE("endpoint derivatives match the classical derivative ladder") {
  for (const JacobiBasis& basis : kBases) {
    double worst = 0.0;
    for (std::size_t n = 0; n <= 12; ++n) {
      for (std::size_t k = 0; k <= n; ++k) {
        for (Side end : {Side::Left, Side::Right}) {
          const double x = (end == Side::Left) ? basis.a() : basis.b();
          const double mine = endpoint_derivative(basis, n, k, end);
          const double ref = static_cast<double>(oracle::ortho_pn_deriv(basis, n, k, x));
          worst = std::max(worst,
                           std::fabs(mine - ref) / std::max(1.0, std::fabs(ref)));
        }
      }
    }
    CHECK(worst <= 1e-10);
  }
  CHECK_THROWS_AS((void)endpoint_derivative(kBases[0], 2, 5, Side::Left),
                  std::out_of_range);
}

TEST_CASE("basis_range reproduces the hand-computed window table") {
  struct Row {
    double beta, gamma, lower, upper;
  };
  const double inf = std::numeric_limits<double>::infinity();
  // lower = max over exponents of 4(mu+1)/(2mu+3); upper = min of 4(mu+1)/(2mu+1)
  const std::vector<Row> table = {
      {0.0, 0.0, 4.0 / 3.0, 4.0},
      {0.5, 0.5, 1.5, 3.0},
      {-0.5, -0.5, 1.0, inf},
      {-0.5, 0.0, 4.0 / 3.0, 4.0},
      {0.0, -0.5, 4.0 / 3.0, 4.0},
      {0.5, 0.0, 1.5, 3.0},
      {0.0, 0.5, 1.5, 3.0},
      {0.5, -0.5, 1.5, 3.0},
      {2.0, 0.0, 12.0 / 7.0, 12.0 / 5.0},
      {1.0, 1.0, 8.0 / 5.0, 8.0 / 3.0},
      {0.3, 0.3, 13.0 / 9.0, 3.25},
      {2.0, -0.5, 12.0 / 7.0, 12.0 / 5.0},
  };
  for (const Row& r : table) {
    const BasisRange br = basis_range(r.beta, r.gamma);
    CHECK(std::fabs(br.M_lower - r.lower) <= 1e-12);
    if (std::isinf(r.upper)) {
      CHECK(std::isinf(br.m_upper));
    } else {
      CHECK(std::fabs(br.m_upper - r.upper) <= 1e-12);
    }
  }
  CHECK_THROWS_AS((void)basis_range(-0.6, 0.0), DomainError);
}

TEST_CASE("lemma1_admissible truth table") {
  CHECK(lemma1_admissible(0.0, 0.0, 2.0));
  CHECK_FALSE(lemma1_admissible(0.0, 0.0, 4.0));        // strict upper bound
  CHECK_FALSE(lemma1_admissible(0.0, 0.0, 4.0 / 3.0));  // strict lower bound
  CHECK_FALSE(lemma1_admissible(0.0, 0.0, 1.2));
  CHECK(lemma1_admissible(0.5, 0.5, 2.0));
  CHECK_FALSE(lemma1_admissible(0.5, 0.5, 3.0));
  CHECK(lemma1_admissible(-0.5, -0.5, 100.0));  // upper bound is +inf
  CHECK_FALSE(lemma1_admissible(-0.5, -0.5, 1.0));
  CHECK_FALSE(lemma1_admissible(0.8, 0.0, 2.0));   // exponent outside [-1/2, 1/2]
  CHECK_FALSE(lemma1_admissible(0.0, -0.6, 2.0));  // ditto, and must not throw
  CHECK(lemma1_admissible(0.3, 0.3, 3.2));
  CHECK_FALSE(lemma1_admissible(0.3, 0.3, 3.3));
}
