#pragma once

#include <cstddef>
#include <vector>

#include "jacfrac/errors.hpp"
#include "jacfrac/jacobi.hpp"

namespace jacfrac {

// Row/column index beyond which double-precision entry accuracy has not been
// verified; API calls that cross it emit a warning (never an error).
inline constexpr std::size_t kEntryStabilityCap = 30;

// Gram matrix of the fractional operator between basis elements, stored with
// the signs folded in so that coefficient mapping is a plain matrix-vector
// product:  entry(m,n) = (p_m, T p_n)  with T = I^alpha (alpha > 0) or
// D^{|alpha|} (alpha < 0) on the chosen side.
struct OpMatrix {
  JacobiBasis basis;
  double alpha{0.0};  // signed order: positive = integral, negative = derivative
  Side side{Side::Left};
  std::size_t N{0};               // entries cover m,n = 0..N
  std::vector<double> entries;    // (N+1)x(N+1), row-major

  double entry(std::size_t m, std::size_t n) const;
};

// The unsigned A-value: hdelta_m * sum_k (-1)^k c(n,k) B(alpha+beta+k+1,
// gamma+m+1) / Gamma(k+alpha-m+1).  Signed-log terms, compensated summation,
// double-double refinement when the sum cancels below 1e-3 of its largest
// term.  Requires alpha in (-1, 1] and alpha + beta + 1 > 0 (DomainError).
double a_entry(const JacobiBasis& basis, double alpha, std::size_t m, std::size_t n);

// Full signed matrix for one side.  Right-side entries evaluate the swapped
// basis with (-1)^m row signs; left-side entries carry (-1)^n column signs.
OpMatrix assemble(const JacobiBasis& basis, double alpha, Side side, std::size_t N,
                  const WarningSink& sink = {});

// Independent route to (p_m, T p_n): monomial expansion of both polynomials,
// closed-form power transforms, Beta-function moments.  Shares no code path
// with a_entry's formula.  Capped at m,n <= 20 (std::out_of_range beyond).
double oracle_entry(const JacobiBasis& basis, double alpha, Side side, std::size_t m,
                    std::size_t n);

struct SymmetryReport {
  double max_asymmetry{0.0};          // max |A_mn - A_nm| over the unsigned values
  double max_pairing_violation{0.0};  // max |(p_m,Tp_n) - (-1)^{m+n}(p_n,Tp_m)|
  double even_block_asymmetry{0.0};   // signed matrix, even-even block
  double odd_block_asymmetry{0.0};    // signed matrix, odd-odd block
};

// Requires beta == gamma (DomainError otherwise); both orientations are
// computed by the direct sum so the report measures real formula asymmetry.
SymmetryReport check_ultraspherical_symmetry(const JacobiBasis& basis, double alpha,
                                             std::size_t N);

// Singular values of the truncated matrix, descending; diagnostic for the
// compactness-style decay.  Requires N <= 200.
std::vector<double> singular_value_report(const OpMatrix& M);

namespace detail {

// rows x cols block of signed entries (row-major).  For the constant weight
// (beta = gamma = 0) column indices past the stability cap are evaluated
// through the transposed sum (A_mn = A_nm there), which keeps the k-sum short
// and cancellation-free; for any other weight the matrix is genuinely
// nonsymmetric, so long columns are computed directly and reported to the sink.
std::vector<double> assemble_signed(const JacobiBasis& basis, double alpha, Side side,
                                    std::size_t rows, std::size_t cols,
                                    const WarningSink& sink = {});

}  // namespace detail

}  // namespace jacfrac
