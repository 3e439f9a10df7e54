#include "jacfrac/abel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jacfrac/special.hpp"

namespace jacfrac {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double two_norm(const std::vector<double>& v) {
  KahanSum s;
  for (double x : v) s.add(x * x);
  return std::sqrt(std::max(s.value(), 0.0));
}

// last index with a nonzero coefficient, or npos when all-zero
std::size_t last_nonzero(const std::vector<double>& c) {
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] != 0.0) return i;
  }
  return static_cast<std::size_t>(-1);
}

void fill_regime(DecayReport& rep) {
  if (rep.lambda_hat <= 0.5) {
    rep.regime = DecayRegime::POnly;
    rep.q_bound = std::numeric_limits<double>::quiet_NaN();
  } else if (rep.lambda_hat < rep.s) {
    rep.regime = DecayRegime::BoundedQ;
    rep.q_bound = (2.0 * rep.s - 1.0) / (rep.s - rep.lambda_hat);
  } else {
    rep.regime = DecayRegime::UnboundedQ;
    rep.q_bound = kInf;
  }
}

}  // namespace

CoeffVector solve(const CoeffVector& f, double alpha, std::size_t N,
                  const WarningSink& sink) {
  // the solver IS the derivative-kind matrix apply; FracOrder validates alpha
  return apply_coeff(f, FracOrder(alpha, FracKind::Derivative), Side::Left, N, sink);
}

DecayReport estimate_decay(const CoeffVector& c) {
  const std::size_t len = c.coeffs.size();
  const std::size_t begin = std::max<std::size_t>(1, len / 2);
  return estimate_decay(c, begin, len);
}

DecayReport estimate_decay(const CoeffVector& c, std::size_t begin, std::size_t end) {
  const std::size_t len = c.coeffs.size();
  if (begin >= end || end > len) throw DomainError("decay-fit window out of range");
  if (end - begin < 6) throw DomainError("decay-fit window must span at least 6 indices");

  DecayReport rep;
  rep.s = 1.5 + std::max(c.basis.beta, c.basis.gamma);
  rep.fit_begin = std::max<std::size_t>(begin, 1);  // log m undefined at m = 0
  rep.fit_end = end;

  std::vector<double> xs, ys;
  xs.reserve(end - rep.fit_begin);
  ys.reserve(end - rep.fit_begin);
  for (std::size_t m = rep.fit_begin; m < end; ++m) {
    const double v = std::fabs(c.coeffs[m]);
    if (v == 0.0) {
      ++rep.skipped_zeros;
      continue;
    }
    xs.push_back(std::log(static_cast<double>(m)));
    ys.push_back(std::log(v));
  }
  if (xs.size() < 4) {
    throw NumericalError("decay fit degenerate: fewer than 4 nonzero coefficients in window");
  }

  // least squares for y = A - lambda * x
  const std::size_t n = xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom <= 0.0) throw NumericalError("decay fit degenerate: collinear abscissae");
  const double slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / n;
  rep.lambda_hat = -slope;

  KahanSum rss;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (intercept + slope * xs[i]);
    rss.add(r * r);
  }
  rep.fit_residual = std::sqrt(std::max(rss.value(), 0.0) / static_cast<double>(n));

  fill_regime(rep);
  return rep;
}

ZmReport zm_condition(const CoeffVector& c, double q) {
  if (!std::isfinite(q) || q < 2.0) throw DomainError("summability order must satisfy q >= 2");

  ZmReport rep;
  const double a = std::max(c.basis.beta, c.basis.gamma);
  const double s = 1.5 + a;

  KahanSum sum;
  for (std::size_t n = 1; n < c.coeffs.size(); ++n) {
    const double cn = std::fabs(c.coeffs[n]);
    if (cn == 0.0) continue;
    const double nn = static_cast<double>(n);
    // |c_n|^q * n^{q-2} * (n^{a+1/2})^{q-2}  =  |c_n|^q * n^{(q-2) s}
    sum.add(std::pow(cn, q) * std::pow(nn, (q - 2.0) * s));
  }
  rep.omega_q = std::pow(std::max(sum.value(), 0.0), 1.0 / q);

  // Convergence verdict.  Finite support (default fit window entirely past the
  // last nonzero index) counts as lambda = +inf without a fit.
  const std::size_t nz = last_nonzero(c.coeffs);
  const std::size_t default_begin = std::max<std::size_t>(1, c.coeffs.size() / 2);
  if (nz == static_cast<std::size_t>(-1) || nz < default_begin) {
    rep.lambda_hat = kInf;
    rep.exponent = -kInf;
    rep.convergent = true;
    return rep;
  }
  const DecayReport decay = estimate_decay(c);
  rep.lambda_hat = decay.lambda_hat;
  rep.exponent = q * (s - decay.lambda_hat) - 2.0 * s;
  rep.convergent = rep.exponent < -1.0;
  return rep;
}

double residual(const CoeffVector& f, const CoeffVector& psi, double alpha) {
  return residual_report(f, psi, alpha).coefficient_l2;
}

ResidualReport residual_report(const CoeffVector& f, const CoeffVector& psi,
                               double alpha) {
  if (f.basis.a() != psi.basis.a() || f.basis.b() != psi.basis.b() ||
      f.basis.beta != psi.basis.beta || f.basis.gamma != psi.basis.gamma) {
    throw DomainError("residual requires f and psi on the same basis");
  }
  if (f.coeffs.empty() || psi.coeffs.empty()) throw InputError("empty coefficient input");

  ResidualReport rep;

  const std::size_t N_out = f.coeffs.size() - 1;
  const CoeffVector back =
      apply_coeff(psi, FracOrder(alpha, FracKind::Integral), Side::Left, N_out);
  std::vector<double> diff(N_out + 1);
  for (std::size_t m = 0; m <= N_out; ++m) diff[m] = back.coeffs[m] - f.coeffs[m];
  rep.coefficient_l2 = two_norm(diff);

  // pointwise check on an interior grid: synthesized f against the direct
  // quadrature image of synthesized psi
  const auto psi_fn = [&](double t) { return synthesize(psi, t); };
  double sup = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double x = f.basis.a() + (i + 0.5) / 50.0 * f.basis.length();
    const double lhs =
        rl_quadrature(psi_fn, FracOrder(alpha, FracKind::Integral), Side::Left, x, f.basis);
    sup = std::max(sup, std::fabs(lhs - synthesize(f, x)));
  }
  rep.pointwise_sup = sup;
  return rep;
}

std::vector<double> derivative_partial_norms(const CoeffVector& f, double alpha,
                                             std::size_t k_max, const WarningSink& sink) {
  if (f.coeffs.empty()) throw InputError("empty coefficient input");
  k_max = std::min(k_max, f.coeffs.size() - 1);
  std::vector<double> norms(k_max + 1);
  for (std::size_t k = 0; k <= k_max; ++k) {
    CoeffVector trunc;
    trunc.basis = f.basis;
    trunc.coeffs.assign(f.coeffs.begin(), f.coeffs.begin() + k + 1);
    const CoeffVector img =
        apply_coeff(trunc, FracOrder(alpha, FracKind::Derivative), Side::Left, k, sink);
    norms[k] = two_norm(img.coeffs);
  }
  return norms;
}

}  // namespace jacfrac
