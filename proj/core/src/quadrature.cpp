#include "jacfrac/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "jacfrac/errors.hpp"
#include "jacfrac/signed_log.hpp"

namespace jacfrac {

double QuadratureRule::integrate(const std::function<double(double)>& f) const {
  KahanSum s;
  for (std::size_t i = 0; i < nodes.size(); ++i) s.add(weights[i] * f(nodes[i]));
  return s.value();
}

QuadratureRule gauss_jacobi(const JacobiBasis& basis, std::size_t N,
                            std::size_t max_order) {
  if (N < 1) throw DomainError("quadrature order must be at least 1");
  if (N > max_order) {
    throw DomainError("quadrature order " + std::to_string(N) +
                      " exceeds the configured maximum " + std::to_string(max_order));
  }

  const RecurrenceCoeffs rc = recurrence_coeffs(basis, N);

  Eigen::VectorXd diag(static_cast<Eigen::Index>(N));
  Eigen::VectorXd sub(static_cast<Eigen::Index>(N > 0 ? N - 1 : 0));
  for (std::size_t i = 0; i < N; ++i) diag[static_cast<Eigen::Index>(i)] = rc.a[i];
  for (std::size_t i = 1; i < N; ++i) sub[static_cast<Eigen::Index>(i - 1)] = rc.b[i];

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalError("tridiagonal eigsolve for the quadrature nodes failed");
  }

  QuadratureRule rule;
  rule.basis = basis;
  rule.order = N;
  rule.nodes.resize(N);
  rule.weights.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    double t = es.eigenvalues()[static_cast<Eigen::Index>(i)];
    // eigenvalues are analytically inside (a,b); guard rounding at the rim
    if (t <= basis.a()) t = std::nextafter(basis.a(), basis.b());
    if (t >= basis.b()) t = std::nextafter(basis.b(), basis.a());
    rule.nodes[i] = t;
  }
  // Christoffel-function weights: w_q = 1 / sum_{k<N} p_k(x_q)^2.  Avoids the
  // eigenvector path entirely and keeps every weight manifestly positive.
  for (std::size_t q = 0; q < N; ++q) {
    const std::vector<double> p = detail::eval_all_prepared(rc, N - 1, rule.nodes[q]);
    KahanSum s;
    for (double v : p) s.add(v * v);
    rule.weights[q] = 1.0 / s.value();
  }
  return rule;
}

GridFunction::GridFunction(std::vector<double> xs, std::vector<double> ys)
    : x(std::move(xs)), y(std::move(ys)) {
  if (x.size() != y.size()) throw InputError("grid sample columns differ in length");
  if (x.size() < 2) throw InputError("grid function needs at least 2 samples");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i]) || !std::isfinite(y[i])) {
      throw InputError("grid samples must be finite");
    }
    if (i > 0 && !(x[i - 1] < x[i])) {
      throw InputError("grid abscissae must be strictly increasing");
    }
  }
}

double GridFunction::operator()(double t) const {
  if (x.size() < 2) throw InputError("grid function is empty");
  // barycentric weights, rescaled by the interval capacity so products stay
  // in double range for large sample counts
  const double scale = 4.0 / (x.back() - x.front());
  KahanSum num, den;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double d = t - x[j];
    if (d == 0.0) return y[j];
    double w = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (i != j) w *= scale * (x[j] - x[i]);
    }
    const double q = 1.0 / (w * d);
    num.add(q * y[j]);
    den.add(q);
  }
  return num.value() / den.value();
}

CoeffVector analyze(const std::function<double(double)>& f, const JacobiBasis& basis,
                    std::size_t N, std::size_t quad_order) {
  std::size_t M = quad_order ? quad_order : std::max<std::size_t>(N + 1, 2 * N);
  if (M < N + 1) M = N + 1;  // contract: rule order at least N+1
  const QuadratureRule rule = gauss_jacobi(basis, M);
  const RecurrenceCoeffs rc = recurrence_coeffs(basis, N);

  std::vector<KahanSum> acc(N + 1);
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double fw = f(rule.nodes[q]) * rule.weights[q];
    const std::vector<double> p = detail::eval_all_prepared(rc, N, rule.nodes[q]);
    for (std::size_t n = 0; n <= N; ++n) acc[n].add(fw * p[n]);
  }

  CoeffVector c;
  c.basis = basis;
  c.coeffs.resize(N + 1);
  for (std::size_t n = 0; n <= N; ++n) c.coeffs[n] = acc[n].value();
  return c;
}

CoeffVector analyze(const GridFunction& g, const JacobiBasis& basis, std::size_t N,
                    std::size_t quad_order) {
  if (g.size() < N + 1) {
    throw InputError("grid function has " + std::to_string(g.size()) +
                     " samples; analysis to degree " + std::to_string(N) + " needs " +
                     std::to_string(N + 1));
  }
  if (g.x.front() < basis.a() || g.x.back() > basis.b()) {
    throw InputError("grid samples extend outside the basis interval");
  }
  return analyze([&g](double t) { return g(t); }, basis, N, quad_order);
}

static double clenshaw(const RecurrenceCoeffs& rc, const std::vector<double>& c,
                       double x) {
  const std::size_t N = c.size() - 1;
  double u1 = 0.0, u2 = 0.0;
  for (std::size_t k = N + 1; k-- > 0;) {
    double u = c[k] + (x - rc.a[k]) / rc.b[k + 1] * u1;
    if (k + 2 < rc.b.size()) u -= rc.b[k + 1] / rc.b[k + 2] * u2;
    u2 = u1;
    u1 = u;
  }
  return u1 / std::sqrt(rc.mu0);
}

double synthesize(const CoeffVector& c, double x) {
  if (!std::isfinite(x) || x < c.basis.a() || x > c.basis.b()) {
    throw DomainError("synthesis point lies outside the basis interval");
  }
  if (c.coeffs.empty()) return 0.0;
  const RecurrenceCoeffs rc = recurrence_coeffs(c.basis, c.coeffs.size());
  return clenshaw(rc, c.coeffs, x);
}

std::vector<double> synthesize_grid(const CoeffVector& c, const std::vector<double>& xs) {
  std::vector<double> out(xs.size(), 0.0);
  if (c.coeffs.empty()) return out;
  const RecurrenceCoeffs rc = recurrence_coeffs(c.basis, c.coeffs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || xs[i] < c.basis.a() || xs[i] > c.basis.b()) {
      throw DomainError("synthesis point lies outside the basis interval");
    }
    out[i] = clenshaw(rc, c.coeffs, xs[i]);
  }
  return out;
}

namespace {

// Reference 16-point rules on [0,1] for the four panel kinds (by which of the
// two weight singularities the panel touches); panels map them affinely.
struct PanelRules {
  QuadratureRule both, left, right, plain;
  double beta, gamma;
};

PanelRules make_panel_rules(const JacobiBasis& basis) {
  PanelRules pr;
  pr.beta = basis.beta;
  pr.gamma = basis.gamma;
  pr.both = gauss_jacobi(JacobiBasis(0.0, 1.0, basis.beta, basis.gamma), 16);
  pr.left = gauss_jacobi(JacobiBasis(0.0, 1.0, basis.beta, 0.0), 16);
  pr.right = gauss_jacobi(JacobiBasis(0.0, 1.0, 0.0, basis.gamma), 16);
  pr.plain = gauss_jacobi(JacobiBasis(0.0, 1.0, 0.0, 0.0), 16);
  return pr;
}

struct AdaptiveIntegrator {
  const std::function<double(double)>* g;
  const JacobiBasis* basis;
  PanelRules rules;
  double tol_abs{0.0};
  int max_depth{48};

  // integral of g * w over [x0,x1]; a w-factor whose endpoint is adjacent to
  // the panel is absorbed into the mapped reference rule, the other one is
  // smooth on the panel and evaluated directly
  double panel(double x0, double x1) const {
    const bool abs_l = (x0 == basis->a()) && rules.beta != 0.0;
    const bool abs_r = (x1 == basis->b()) && rules.gamma != 0.0;
    const double L = x1 - x0;
    const QuadratureRule* r = &rules.plain;
    if (abs_l && abs_r) {
      r = &rules.both;
    } else if (abs_l) {
      r = &rules.left;
    } else if (abs_r) {
      r = &rules.right;
    }
    const double wscale =
        std::pow(L, (abs_l ? rules.beta : 0.0) + (abs_r ? rules.gamma : 0.0) + 1.0);
    KahanSum s;
    for (std::size_t i = 0; i < r->nodes.size(); ++i) {
      const double xi = x0 + L * r->nodes[i];
      double extra = 1.0;
      if (!abs_l && rules.beta != 0.0) extra *= std::pow(xi - basis->a(), rules.beta);
      if (!abs_r && rules.gamma != 0.0) extra *= std::pow(basis->b() - xi, rules.gamma);
      s.add(r->weights[i] * extra * (*g)(xi));
    }
    return wscale * s.value();
  }

  double refine(double x0, double x1, double whole, int depth) const {
    const double m = 0.5 * (x0 + x1);
    if (!(x0 < m && m < x1)) return whole;  // interval exhausted in doubles
    const double left = panel(x0, m);
    const double right = panel(m, x1);
    const double sum = left + right;
    if (std::abs(sum - whole) <= tol_abs) return sum;
    if (depth >= max_depth) {
      if (std::abs(sum - whole) > 1.0e4 * tol_abs) {
        throw NumericalError("adaptive weighted quadrature failed to converge");
      }
      return sum;
    }
    return refine(x0, m, left, depth + 1) + refine(m, x1, right, depth + 1);
  }
};

}  // namespace

namespace detail {

double integrate_weighted(const std::function<double(double)>& g,
                          const JacobiBasis& basis) {
  AdaptiveIntegrator ai;
  ai.g = &g;
  ai.basis = &basis;
  ai.rules = make_panel_rules(basis);

  // magnitude reference from |g| on one whole-interval absorbed rule
  const QuadratureRule probe =
      gauss_jacobi(JacobiBasis(basis.interval, basis.beta, basis.gamma), 24);
  double mag = 0.0;
  for (std::size_t i = 0; i < probe.nodes.size(); ++i) {
    mag += probe.weights[i] * std::abs(g(probe.nodes[i]));
  }
  ai.tol_abs = std::max(mag, 1.0e-60) * 5.0e-14;

  const double whole = ai.panel(basis.a(), basis.b());
  return ai.refine(basis.a(), basis.b(), whole, 0);
}

}  // namespace detail

double weighted_lp_norm(const std::function<double(double)>& f, const JacobiBasis& basis,
                        double p) {
  if (!std::isfinite(p) || p < 1.0) throw DomainError("Lebesgue exponent must be >= 1");
  std::function<double(double)> g;
  if (p == 2.0) {
    g = [&f](double x) {
      const double v = f(x);
      return v * v;
    };
  } else {
    g = [&f, p](double x) { return std::pow(std::abs(f(x)), p); };
  }
  const double integral = detail::integrate_weighted(g, basis);
  return std::pow(std::max(integral, 0.0), 1.0 / p);
}

}  // namespace jacfrac
