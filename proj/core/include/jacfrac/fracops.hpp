#pragma once

#include <functional>

#include "jacfrac/errors.hpp"
#include "jacfrac/opmatrix.hpp"
#include "jacfrac/quadrature.hpp"

namespace jacfrac {

enum class FracKind { Integral, Derivative };

// Fractional order together with which operator it selects.  The operative
// range is alpha in (0,1); the ends are admitted where the closed forms extend
// continuously: alpha = 0 is the identity for either kind and alpha = 1 of the
// integral kind is plain antidifferentiation.  The derivative kind stops short
// of 1 (the signed matrix convention has no -1 slot).
struct FracOrder {
  double alpha{0.5};
  FracKind kind{FracKind::Integral};

  FracOrder() = default;
  // DomainError outside [0,1] for integrals, [0,1) for derivatives.
  FracOrder(double alpha_, FracKind kind_);

  // Sign convention of the operational matrix: integrals keep alpha,
  // derivatives negate it.
  double signed_order() const { return kind == FracKind::Integral ? alpha : -alpha; }
};

// Coefficient-space application of I^alpha or D^alpha: f_m = sum_n E_mn psi_n
// with E the signed operational matrix for psi's basis.  The result carries
// coefficients 0..N_out.  Emits a warning (never an error) when the basis
// exponents leave the [-1/2,1/2] admissibility square, and when the matrix
// needs columns beyond the verified stability cap.  alpha = 0 is returned as
// an exact copy.
CoeffVector apply_coeff(const CoeffVector& psi, FracOrder order, Side side,
                        std::size_t N_out, const WarningSink& sink = {});

// Heuristic bound on what dropping the coefficients of psi beyond index
// N_keep would do to an apply_coeff result: sum_{n>N_keep} |psi_n| * max_m
// |E_mn| over rows m <= N_keep.  Reported as an estimate only; it ignores
// cancellation between columns.
double truncation_tail_estimate(const CoeffVector& psi, FracOrder order, Side side,
                                std::size_t N_keep);

// Smooth function bundled with an optional closed-form derivative.  When the
// derivative is absent, consumers that need f' fall back to finite
// differences of the integral path and say so through their warning sink.
struct SmoothFn {
  std::function<double(double)> value;
  std::function<double(double)> derivative;  // may be empty

  SmoothFn() = default;
  SmoothFn(std::function<double(double)> v) : value(std::move(v)) {}
  SmoothFn(std::function<double(double)> v, std::function<double(double)> d)
      : value(std::move(v)), derivative(std::move(d)) {}
};

// Direct Riemann-Liouville evaluation at one point by Gauss-Jacobi quadrature
// on the subinterval [a,x] (left) or [x,b] (right), with the kernel
// singularity (x-t)^{alpha-1} absorbed into the rule's weight exponent; exact
// for polynomial f.  The derivative kind uses the endpoint-term-plus-I^{1-alpha}[f']
// formula when a derivative callback is present, else a stabilized central
// difference of the integral path (warning).  Requires x strictly inside on
// the operator's anchored end: x in (a,b] for left, [a,b) for right.
double rl_quadrature(const SmoothFn& f, FracOrder order, Side side, double x,
                     const JacobiBasis& basis, const WarningSink& sink = {});
double rl_quadrature(const std::function<double(double)>& f, FracOrder order, Side side,
                     double x, const JacobiBasis& basis, const WarningSink& sink = {});

// Closed form of the operator on the anchored power function:
//   I^alpha [(x-a)^mu] = coefficient * (x-a)^exponent   (left; mirrored right).
struct PowerTerm {
  double coefficient{0.0};
  double exponent{0.0};
};

// Requires mu > -1.  Derivative kind goes through the reciprocal gamma, so a
// pole (e.g. the derivative of (x-a)^{alpha-1}) yields coefficient 0 exactly.
PowerTerm power_closed_form(double mu, FracOrder order, Side side);

// D^alpha f(x) for absolutely continuous f with a supplied derivative:
//   left : f(a)(x-a)^{-alpha}/Gamma(1-alpha) + I^{1-alpha}[f'](x)
//   right: f(b)(b-x)^{-alpha}/Gamma(1-alpha) - I^{1-alpha}[f'](x)
// order.kind must be Derivative and f.derivative must be set (DomainError
// otherwise).  When f(endpoint) != 0 the value grows like distance^{-alpha}
// toward the anchored endpoint; it is returned as-is.
double smooth_derivative(const SmoothFn& f, FracOrder order, Side side, double x,
                         const JacobiBasis& basis);

}  // namespace jacfrac
