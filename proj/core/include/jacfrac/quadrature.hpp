#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "jacfrac/jacobi.hpp"

namespace jacfrac {

inline constexpr std::size_t kDefaultMaxQuadratureOrder = 512;

// Gauss rule for the basis weight: integrates polynomials of degree 2N-1
// against (x-a)^beta (b-x)^gamma exactly.  Nodes are strictly inside (a,b)
// and ascending.
struct QuadratureRule {
  JacobiBasis basis;
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t order{0};

  double integrate(const std::function<double(double)>& f) const;
};

// Truncated coefficient sequence of a function in the orthonormal basis.
struct CoeffVector {
  JacobiBasis basis;
  std::vector<double> coeffs;

  std::size_t size() const { return coeffs.size(); }
  // Highest retained index N (coeffs run 0..N).
  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

// Sampled function on a strictly increasing grid; analyzed via barycentric
// polynomial interpolation, so it is meant for smooth noise-free data.
struct GridFunction {
  std::vector<double> x;
  std::vector<double> y;

  GridFunction() = default;
  GridFunction(std::vector<double> xs, std::vector<double> ys);  // validates

  std::size_t size() const { return x.size(); }
  // Interpolated value at t (barycentric form on the sample grid).
  double operator()(double t) const;
};

// Nodes via the symmetric-tridiagonal eigenproblem of the recurrence
// coefficients, weights via the Christoffel function (inverse kernel sum).
// Throws DomainError for N < 1 or N > max_order.
QuadratureRule gauss_jacobi(const JacobiBasis& basis, std::size_t N,
                            std::size_t max_order = kDefaultMaxQuadratureOrder);

// Coefficients c_n = (f, p_n) for n = 0..N by quadrature of order quad_order
// (0 selects the default max(N+1, 2N), which over-integrates the products).
CoeffVector analyze(const std::function<double(double)>& f, const JacobiBasis& basis,
                    std::size_t N, std::size_t quad_order = 0);

// GridFunction ingestion: interpolates the samples first (needs at least N+1
// of them, InputError otherwise, and all inside the basis interval).
CoeffVector analyze(const GridFunction& g, const JacobiBasis& basis, std::size_t N,
                    std::size_t quad_order = 0);

// Partial sum  sum_n c_n p_n(x)  by backward (Clenshaw) recurrence.
double synthesize(const CoeffVector& c, double x);

// Same partial sum on many points with the recurrence data built once.
std::vector<double> synthesize_grid(const CoeffVector& c, const std::vector<double>& xs);

// (integral |f|^p w dx)^{1/p} over the basis interval by adaptive panels;
// boundary panels absorb the weight-exponent singularity into the local rule.
// Requires p >= 1 (DomainError); throws NumericalError if refinement stalls.
double weighted_lp_norm(const std::function<double(double)>& f, const JacobiBasis& basis,
                        double p);

namespace detail {

// Adaptive integral of g * w over [a,b] (signed g allowed); building block
// for weighted_lp_norm and the test oracles.
double integrate_weighted(const std::function<double(double)>& g,
                          const JacobiBasis& basis);

}  // namespace detail

}  // namespace jacfrac
