#pragma once

#include "jacfrac/signed_log.hpp"

namespace jacfrac {

/*
 * Gamma-function machinery in sign/log form.
 *
 * Everything downstream (normalization constants, Taylor coefficients,
 * operational-matrix entries) is a product of gamma and beta factors whose
 * magnitudes overflow double range around n ~ 20, so the primitives here
 * return SignedLogValue and leave exponentiation to the summation layer.
 *
 * Conventions:
 *  - log_gamma_signed(x): ln|Gamma(x)| with the sign of Gamma(x); throws on
 *    the poles x = 0, -1, -2, ...
 *  - rgamma(x) = 1/Gamma(x) as a total entire function taking the exact
 *    value 0 at the poles.  An argument counts as a pole when it is within
 *    1e-12 of a non-positive integer.
 *  - gen_binom(eta, mu) = Gamma(eta+1)/Gamma(eta-mu+1), the generalized
 *    falling-factorial binomial symbol (mu need not be integral).
 */

inline constexpr double kPi = 3.14159265358979323846;

// sin(pi*x) with argument reduction done on x itself, so it is exact at
// integers and accurate near them (needed by the reflection formula).
double sin_pi(double x);

// True when x is within 1e-12 of a non-positive integer (gamma pole).
bool is_gamma_pole(double x);

// ln|Gamma(x)| and sign(Gamma(x)).  Lanczos (g=7) for x >= 0.5, reflection
// below.  Relative accuracy ~1e-14 away from poles.
SignedLogValue log_gamma_signed(double x);

// 1/Gamma(x) in sign/log form; zero() at poles instead of throwing.
SignedLogValue log_rgamma_signed(double x);

// 1/Gamma(x) as a plain double.  Exact 0.0 at the poles; underflows to 0 /
// overflows to +-inf at the extreme ends of double range.
double rgamma(double x);

// Euler beta B(x,y), x,y > 0, in sign/log form (sign is always +1).
// Evaluation order is canonicalized so beta(x,y) and beta(y,x) are
// bit-identical.
SignedLogValue beta(double x, double y);

// Gamma(eta+1)/Gamma(eta-mu+1).  Returns 0 when the denominator alone hits a
// pole (falling factorial crossing zero); resolves the limit when numerator
// and denominator poles coincide; throws DomainError when only the numerator
// is singular.
double gen_binom(double eta, double mu);

}  // namespace jacfrac
