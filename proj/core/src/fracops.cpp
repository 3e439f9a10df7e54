#include "jacfrac/fracops.hpp"

#include <cmath>
#include <string>

#include "jacfrac/special.hpp"

namespace jacfrac {

namespace {

// fixed rule order for the absorbed-kernel quadrature: exact up to degree 95,
// far past anything the library produces
constexpr std::size_t kRlRuleOrder = 48;

void validate_point(Side side, double x, const JacobiBasis& basis) {
  if (!std::isfinite(x)) throw DomainError("evaluation point must be finite");
  if (side == Side::Left) {
    if (!(x > basis.a()) || !(x <= basis.b())) {
      throw DomainError("left-side evaluation needs x in (a, b]");
    }
  } else {
    if (!(x >= basis.a()) || !(x < basis.b())) {
      throw DomainError("right-side evaluation needs x in [a, b)");
    }
  }
}

void warn_if_outside_window(const JacobiBasis& basis, const WarningSink& sink) {
  if (basis.beta < -0.5 || basis.beta > 0.5 || basis.gamma < -0.5 || basis.gamma > 0.5) {
    warn(sink,
         "basis exponents outside Lemma 1 admissibility window; coefficient "
         "algebra proceeds but the basis-property hypothesis fails");
  }
}

double rl_integral(const std::function<double(double)>& f, double alpha, Side side,
                   double x, const JacobiBasis& basis) {
  if (side == Side::Left) {
    JacobiBasis sub(basis.a(), x, 0.0, alpha - 1.0);
    auto rule = gauss_jacobi(sub, kRlRuleOrder);
    return rule.integrate(f) * rgamma(alpha);
  }
  JacobiBasis sub(x, basis.b(), alpha - 1.0, 0.0);
  auto rule = gauss_jacobi(sub, kRlRuleOrder);
  return rule.integrate(f) * rgamma(alpha);
}

}  // namespace

FracOrder::FracOrder(double alpha_, FracKind kind_) : alpha(alpha_), kind(kind_) {
  if (!std::isfinite(alpha_) || alpha_ < 0.0 ||
      (kind_ == FracKind::Integral ? alpha_ > 1.0 : alpha_ >= 1.0)) {
    throw DomainError(kind_ == FracKind::Integral
                          ? "integral order must lie in [0, 1]"
                          : "derivative order must lie in [0, 1)");
  }
}

CoeffVector apply_coeff(const CoeffVector& psi, FracOrder order, Side side,
                        std::size_t N_out, const WarningSink& sink) {
  if (psi.coeffs.empty()) throw InputError("empty coefficient input");
  warn_if_outside_window(psi.basis, sink);

  CoeffVector out;
  out.basis = psi.basis;
  out.coeffs.assign(N_out + 1, 0.0);

  if (order.alpha == 0.0) {  // identity, kept exact (copy, pad, or truncate)
    const std::size_t upto = std::min(N_out + 1, psi.coeffs.size());
    for (std::size_t m = 0; m < upto; ++m) out.coeffs[m] = psi.coeffs[m];
    return out;
  }

  const std::size_t cols = psi.coeffs.size();
  const auto E =
      detail::assemble_signed(psi.basis, order.signed_order(), side, N_out + 1, cols, sink);
  for (std::size_t m = 0; m <= N_out; ++m) {
    KahanSum s;
    for (std::size_t n = 0; n < cols; ++n) s.add(E[m * cols + n] * psi.coeffs[n]);
    out.coeffs[m] = s.value();
  }
  return out;
}

double truncation_tail_estimate(const CoeffVector& psi, FracOrder order, Side side,
                                std::size_t N_keep) {
  if (psi.coeffs.empty()) throw InputError("empty coefficient input");
  if (order.alpha == 0.0) {
    double tail = 0.0;
    for (std::size_t n = N_keep + 1; n < psi.coeffs.size(); ++n)
      tail += std::fabs(psi.coeffs[n]);
    return tail;
  }
  if (N_keep + 1 >= psi.coeffs.size()) return 0.0;
  const std::size_t cols = psi.coeffs.size();
  const auto E =
      detail::assemble_signed(psi.basis, order.signed_order(), side, N_keep + 1, cols);
  double tail = 0.0;
  for (std::size_t n = N_keep + 1; n < cols; ++n) {
    double colmax = 0.0;
    for (std::size_t m = 0; m <= N_keep; ++m)
      colmax = std::max(colmax, std::fabs(E[m * cols + n]));
    tail += std::fabs(psi.coeffs[n]) * colmax;
  }
  return tail;
}

double rl_quadrature(const SmoothFn& f, FracOrder order, Side side, double x,
                     const JacobiBasis& basis, const WarningSink& sink) {
  if (!f.value) throw InputError("function callback is empty");
  validate_point(side, x, basis);

  if (order.alpha == 0.0) return f.value(x);

  if (order.kind == FracKind::Integral) {
    return rl_integral(f.value, order.alpha, side, x, basis);
  }

  if (f.derivative) return smooth_derivative(f, order, side, x, basis);

  // No derivative callback: differentiate the integral path numerically.
  warn(sink,
       "derivative computed by finite differences of the integral path; "
       "expect reduced accuracy (supply a derivative callback to avoid this)");
  const double alpha = order.alpha;
  const double h = basis.length() * 6.0e-6;
  auto g = [&](double t) { return rl_integral(f.value, 1.0 - alpha, side, t, basis); };
  double lo = x - h, hi = x + h;
  const bool left_ok = (side == Side::Left) ? (lo > basis.a()) : (lo >= basis.a());
  const bool right_ok = (side == Side::Left) ? (hi <= basis.b()) : (hi < basis.b());
  double d;
  if (left_ok && right_ok) {
    d = (g(hi) - g(lo)) / (2.0 * h);
  } else if (right_ok) {
    d = (g(hi) - g(x)) / h;
  } else {
    d = (g(x) - g(lo)) / h;
  }
  // right-side operator is -d/dx of the right integral
  return (side == Side::Left) ? d : -d;
}

double rl_quadrature(const std::function<double(double)>& f, FracOrder order, Side side,
                     double x, const JacobiBasis& basis, const WarningSink& sink) {
  return rl_quadrature(SmoothFn(f), order, side, x, basis, sink);
}

PowerTerm power_closed_form(double mu, FracOrder order, Side /*side*/) {
  // The right-side form mirrors to powers of (b-x) with identical numbers, so
  // the side only names the anchoring endpoint.
  if (!std::isfinite(mu) || !(mu > -1.0)) {
    throw DomainError("power exponent must satisfy mu > -1");
  }
  PowerTerm out;
  if (order.kind == FracKind::Integral) {
    out.exponent = mu + order.alpha;
    out.coefficient =
        (log_gamma_signed(mu + 1.0) * log_rgamma_signed(mu + 1.0 + order.alpha)).to_double();
  } else {
    out.exponent = mu - order.alpha;
    out.coefficient =
        (log_gamma_signed(mu + 1.0) * log_rgamma_signed(mu + 1.0 - order.alpha)).to_double();
  }
  return out;
}

double smooth_derivative(const SmoothFn& f, FracOrder order, Side side, double x,
                         const JacobiBasis& basis) {
  if (order.kind != FracKind::Derivative) {
    throw DomainError("smooth_derivative requires a derivative-kind order");
  }
  if (!f.value) throw InputError("function callback is empty");
  if (!f.derivative) {
    throw DomainError("smooth_derivative needs a derivative callback "
                      "(use rl_quadrature for the finite-difference fallback)");
  }
  validate_point(side, x, basis);
  const double alpha = order.alpha;
  const FracOrder complement(1.0 - alpha, FracKind::Integral);
  if (side == Side::Left) {
    const double endpoint =
        f.value(basis.a()) * std::pow(x - basis.a(), -alpha) * rgamma(1.0 - alpha);
    return endpoint + rl_integral(f.derivative, complement.alpha, side, x, basis);
  }
  const double endpoint =
      f.value(basis.b()) * std::pow(basis.b() - x, -alpha) * rgamma(1.0 - alpha);
  return endpoint - rl_integral(f.derivative, complement.alpha, side, x, basis);
}

}  // namespace jacfrac
