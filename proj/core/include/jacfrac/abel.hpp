#pragma once

#include <vector>

#include "jacfrac/fracops.hpp"
#include "jacfrac/quadrature.hpp"

namespace jacfrac {

// Integrability regime of a coefficient sequence |c_m| ~ m^{-lambda}:
// lambda <= 1/2 gives only the basis-window exponents, 1/2 < lambda < s gives
// convergence in L_q up to a finite q bound, lambda >= s frees q entirely.
enum class DecayRegime { POnly, BoundedQ, UnboundedQ };

struct DecayReport {
  double lambda_hat{0.0};
  double s{0.0};        // 3/2 + max(beta, gamma), fixed by the basis
  double q_bound{0.0};  // (2s-1)/(s-lambda) when bounded; +inf when unbounded;
                        // NaN when the regime is p-only (no q statement)
  DecayRegime regime{DecayRegime::POnly};
  std::size_t fit_begin{0};  // fitted window [fit_begin, fit_end)
  std::size_t fit_end{0};
  double fit_residual{0.0};  // RMS residual of the log-log least-squares fit
  std::size_t skipped_zeros{0};
};

// Solve the Abel equation I^alpha psi = f for psi, truncated at N: applies
// the derivative-kind operational matrix to f's coefficients (exactly
// apply_coeff with a derivative order; kept as the named entry point of the
// solver).  alpha in [0,1); 0 is the degenerate identity.
CoeffVector solve(const CoeffVector& f, double alpha, std::size_t N,
                  const WarningSink& sink = {});

// Least-squares fit of log|c_m| against log m over [begin, end) (default:
// upper half of the available indices).  Exact zeros are skipped and counted;
// fewer than 4 nonzero points throws NumericalError, window shorter than 6 or
// out of range throws DomainError.  Index 0 never participates.
DecayReport estimate_decay(const CoeffVector& c);
DecayReport estimate_decay(const CoeffVector& c, std::size_t begin, std::size_t end);

// Weighted summability test on the coefficients.  omega_q is the truncated
//   ( sum_{n>=1} |c_n|^q n^{q-2} M_n^{q-2} )^{1/q},  M_n = n^{max(beta,gamma)+1/2}
// with the growth constant normalized to 1, so the value is relative.  The
// convergence flag compares the tail exponent q(s - lambda_hat) - 2s against
// -1 (strict); a coefficient vector with finite support is always convergent.
struct ZmReport {
  double omega_q{0.0};
  bool convergent{false};
  double exponent{0.0};    // q(s - lambda_hat) - 2s
  double lambda_hat{0.0};  // +inf for finite support
};
ZmReport zm_condition(const CoeffVector& c, double q);  // DomainError when q < 2

// A-posteriori check of I^alpha psi = f.  The scalar residual is the l2 norm
// of apply_coeff(psi, integral alpha) - f over f's coefficient range; the
// report adds the sup of |I^alpha psi - f| over a 50-point interior grid
// (synthesized f against direct quadrature of synthesized psi).
double residual(const CoeffVector& f, const CoeffVector& psi, double alpha);

struct ResidualReport {
  double coefficient_l2{0.0};
  double pointwise_sup{0.0};
};
ResidualReport residual_report(const CoeffVector& f, const CoeffVector& psi, double alpha);

// Diagnostic for the bounded-partial-sums hypothesis: the l2 norms of the
// derivative applied to each truncation S_k f (coefficients 0..k), for
// k = 0..k_max.  Growth of this sequence signals the hypothesis failing; the
// caller decides what to do with it.
std::vector<double> derivative_partial_norms(const CoeffVector& f, double alpha,
                                             std::size_t k_max,
                                             const WarningSink& sink = {});

}  // namespace jacfrac
