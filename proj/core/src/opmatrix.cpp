#include "jacfrac/opmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "jacfrac/double_double.hpp"
#include "jacfrac/special.hpp"

namespace jacfrac {

namespace {

// Relative magnitude of the scaled compensated sum below which double
// precision has visibly cancelled away and the double-double path takes over.
// Generous on purpose: the compensated path keeps ~26*eps/|S| relative error,
// so entries that cancel past this point get the exact-ratio walk instead.
constexpr double kCancelThreshold = 1.0e-3;

void check_order(const JacobiBasis& basis, double alpha) {
  if (!std::isfinite(alpha) || !(alpha > -1.0) || !(alpha <= 1.0)) {
    throw DomainError("fractional order must lie in (-1, 1]");
  }
  if (!(alpha + basis.beta + 1.0 > 0.0)) {
    throw DomainError(
        "operational-matrix entry needs alpha + beta + 1 > 0 on this side "
        "(Beta-function argument would be non-positive)");
  }
}

// log of the row normalizer (positive): (b-a)^{alpha+(s+1)/2} *
// sqrt((s+2m+1) G(s+m+1) / (m! G(beta+m+1) G(gamma+m+1))), s = beta+gamma.
double hdelta_log(const JacobiBasis& basis, double alpha, std::size_t m) {
  const double be = basis.beta;
  const double ga = basis.gamma;
  const double s = be + ga;
  const double mm = static_cast<double>(m);
  double core;
  if (m == 0) {
    // (s+1)Gamma(s+1) = Gamma(s+2) removes the 0*inf form at s = -1
    core = 0.5 * (log_gamma_signed(s + 2.0).log_abs - log_gamma_signed(be + 1.0).log_abs -
                  log_gamma_signed(ga + 1.0).log_abs);
  } else {
    core = 0.5 * (std::log(s + 2.0 * mm + 1.0) + log_gamma_signed(s + mm + 1.0).log_abs -
                  log_gamma_signed(mm + 1.0).log_abs -
                  log_gamma_signed(be + mm + 1.0).log_abs -
                  log_gamma_signed(ga + mm + 1.0).log_abs);
  }
  return (alpha + 0.5 * (s + 1.0)) * std::log(basis.length()) + core;
}

// exact double-double value of a + b + c with c integral
DD dd3(double a, double b, double c) { return dd_add(dd_sum(a, b), DD(c)); }

// Shared evaluation context for a block of entries.  All caches are built up
// front, so concurrent reads from worker threads need no synchronization.
struct EntryEngine {
  double be, ga, al, s;
  std::size_t max_row, max_col;
  std::vector<double> hdelta;              // [r]
  std::vector<std::vector<double>> clog;   // [c][k], log of the Taylor quantity
  std::vector<double> lg_abk;              // lgG(al+be+k+1)
  std::vector<double> lg_gr;               // lgG(ga+r+1)
  std::vector<double> lg_abgkr;            // lgG(al+be+ga+(k+r)+2)
  std::vector<SignedLogValue> rg;          // log 1/G((k-r)+al+1), offset max_row

  EntryEngine(const JacobiBasis& basis, double alpha, std::size_t mr, std::size_t mc)
      : be(basis.beta), ga(basis.gamma), al(alpha), s(be + ga), max_row(mr), max_col(mc) {
    check_order(basis, alpha);
    hdelta.resize(max_row + 1);
    for (std::size_t r = 0; r <= max_row; ++r) hdelta[r] = hdelta_log(basis, alpha, r);
    clog.resize(max_col + 1);
    for (std::size_t c = 0; c <= max_col; ++c) {
      clog[c].resize(c + 1);
      for (std::size_t k = 0; k <= c; ++k) {
        clog[c][k] = taylor_coeff_log(basis, c, k).log_abs;
      }
    }
    lg_abk.resize(max_col + 1);
    for (std::size_t k = 0; k <= max_col; ++k) {
      lg_abk[k] = log_gamma_signed(al + be + static_cast<double>(k) + 1.0).log_abs;
    }
    lg_gr.resize(max_row + 1);
    for (std::size_t r = 0; r <= max_row; ++r) {
      lg_gr[r] = log_gamma_signed(ga + static_cast<double>(r) + 1.0).log_abs;
    }
    lg_abgkr.resize(max_row + max_col + 1);
    for (std::size_t t = 0; t <= max_row + max_col; ++t) {
      lg_abgkr[t] = log_gamma_signed(al + s + static_cast<double>(t) + 2.0).log_abs;
    }
    rg.resize(max_row + max_col + 1);
    for (std::size_t i = 0; i < rg.size(); ++i) {
      const double d = static_cast<double>(i) - static_cast<double>(max_row);
      rg[i] = log_rgamma_signed(d + al + 1.0);
    }
  }

  const SignedLogValue& rgamma_at(std::size_t k, std::size_t r) const {
    return rg[k + max_row - r];
  }

  // term ratio t_{k+1}/t_k of the k-sum for entry (r,c), in double-double;
  // every linear factor is assembled with error-free transforms so the chain
  // stays accurate to ~1e-30 relative
  DD ratio_up(std::size_t r, std::size_t c, std::size_t k) const {
    const double kk = static_cast<double>(k);
    const double rr = static_cast<double>(r);
    const double cc = static_cast<double>(c);
    const DD num = dd_mul(dd_mul(dd3(be, ga, cc + kk + 1.0), DD(cc - kk)),
                          dd3(al, be, kk + 1.0));
    const DD den = dd_mul(dd_mul(dd_sum(be, kk + 1.0),
                                 dd_add(dd3(al, be, kk + rr + 2.0), DD(ga))),
                          dd_sum(al, kk - rr + 1.0));
    return dd_neg(dd_div(num, den));
  }

  // t_k / t_{k+1}; written with the possibly-zero factor in the numerator so
  // walking down through an exact zero of the term sequence yields exact zeros
  DD ratio_down(std::size_t r, std::size_t c, std::size_t k) const {
    const double kk = static_cast<double>(k);
    const double rr = static_cast<double>(r);
    const double cc = static_cast<double>(c);
    const DD num = dd_mul(dd_mul(dd_sum(be, kk + 1.0),
                                 dd_add(dd3(al, be, kk + rr + 2.0), DD(ga))),
                          dd_sum(al, kk - rr + 1.0));
    const DD den = dd_mul(dd_mul(dd3(be, ga, cc + kk + 1.0), DD(cc - kk)),
                          dd3(al, be, kk + 1.0));
    return dd_neg(dd_div(num, den));
  }

  double refine_dd(std::size_t r, std::size_t c, const std::vector<double>& lg,
                   const std::vector<int>& sg, double L) const {
    std::size_t kstar = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k <= c; ++k) {
      if (sg[k] != 0 && lg[k] > best) {
        best = lg[k];
        kstar = k;
      }
    }
    std::vector<DD> u(c + 1);
    u[kstar] = DD(static_cast<double>(sg[kstar]));  // exp(lg[kstar]-L) == 1 exactly
    for (std::size_t k = kstar; k < c; ++k) u[k + 1] = dd_mul(u[k], ratio_up(r, c, k));
    for (std::size_t k = kstar; k-- > 0;) u[k] = dd_mul(u[k + 1], ratio_down(r, c, k));
    DD total;
    for (std::size_t k = 0; k <= c; ++k) total = dd_add(total, u[k]);
    return total.hi + total.lo;
  }

  // the unsigned A-value for row r, column c
  double unsigned_A(std::size_t r, std::size_t c) const {
    std::vector<double> lg(c + 1, 0.0);
    std::vector<int> sg(c + 1, 0);
    double L = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k <= c; ++k) {
      const SignedLogValue& rv = rgamma_at(k, r);
      if (rv.sign == 0) continue;  // exact zero of 1/Gamma at a pole
      lg[k] = clog[c][k] + lg_abk[k] + lg_gr[r] - lg_abgkr[k + r] + rv.log_abs;
      sg[k] = (k % 2 == 0) ? rv.sign : -rv.sign;
      L = std::max(L, lg[k]);
    }
    if (L == -std::numeric_limits<double>::infinity()) return 0.0;
    KahanSum ks;
    for (std::size_t k = 0; k <= c; ++k) {
      if (sg[k] != 0) ks.add(sg[k] * std::exp(lg[k] - L));
    }
    double S = ks.value();
    if (std::abs(S) < kCancelThreshold) S = refine_dd(r, c, lg, sg, L);
    return std::exp(hdelta[r] + L) * S;
  }
};

}  // namespace

double OpMatrix::entry(std::size_t m, std::size_t n) const {
  if (m > N || n > N) throw std::out_of_range("OpMatrix::entry index exceeds N");
  return entries[m * (N + 1) + n];
}

double a_entry(const JacobiBasis& basis, double alpha, std::size_t m, std::size_t n) {
  const EntryEngine eng(basis, alpha, m, n);
  return eng.unsigned_A(m, n);
}

namespace detail {

std::vector<double> assemble_signed(const JacobiBasis& basis, double alpha, Side side,
                                    std::size_t rows, std::size_t cols,
                                    const WarningSink& sink) {
  if (rows == 0 || cols == 0) return {};
  const JacobiBasis eval_basis = (side == Side::Left) ? basis : basis.swapped();
  // A is symmetric only when the weight is constant (beta = gamma = 0): the
  // fractional integration-by-parts / reflection identity then closes on the
  // basis itself.  For a nonconstant symmetric weight the matrix is genuinely
  // nonsymmetric (asymmetry ~1e-1 at beta = 0.3), so no transposed reroute.
  const bool sym_route = (eval_basis.beta == 0.0 && eval_basis.gamma == 0.0);

  // Direct evaluation of column n runs an alternating (n+1)-term sum; with the
  // symmetry available, long columns reroute to the transposed sum, which has
  // only min(m,n)+1 terms.
  std::size_t max_col_used = 0;
  std::size_t max_row_used = rows - 1;
  for (std::size_t n = 0; n < cols; ++n) {
    std::size_t used = n;
    if (sym_route && n > kEntryStabilityCap && n >= 1) {
      used = std::min<std::size_t>(n, rows - 1);  // worst direct col under the policy
      max_row_used = std::max(max_row_used, n);
    }
    max_col_used = std::max(max_col_used, used);
  }
  if (!sym_route && cols - 1 > kEntryStabilityCap) {
    warn(sink, "operational-matrix columns beyond index " +
                   std::to_string(kEntryStabilityCap) +
                   " are outside the verified double-precision accuracy envelope");
  }

  const EntryEngine eng(eval_basis, alpha, max_row_used, max_col_used);

  std::vector<double> out(rows * cols, 0.0);
  auto fill_rows = [&](std::size_t r0, std::size_t r1) {
    for (std::size_t m = r0; m < r1; ++m) {
      for (std::size_t n = 0; n < cols; ++n) {
        const bool transpose = sym_route && n > kEntryStabilityCap && m < n;
        const double A = transpose ? eng.unsigned_A(n, m) : eng.unsigned_A(m, n);
        const std::size_t parity = (side == Side::Left) ? n : m;
        out[m * cols + n] = (parity % 2 == 0) ? A : -A;
      }
    }
  };

  const std::size_t work = rows * cols * (max_col_used + 1);
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const std::size_t n_threads = std::min<std::size_t>(hw, std::max<std::size_t>(rows / 8, 1));
  if (work < 4096 || n_threads < 2) {
    fill_rows(0, rows);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    const std::size_t chunk = (rows + n_threads - 1) / n_threads;
    for (std::size_t t = 0; t < n_threads; ++t) {
      const std::size_t r0 = t * chunk;
      const std::size_t r1 = std::min(rows, r0 + chunk);
      if (r0 >= r1) break;
      pool.emplace_back(fill_rows, r0, r1);
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

}  // namespace detail

OpMatrix assemble(const JacobiBasis& basis, double alpha, Side side, std::size_t N,
                  const WarningSink& sink) {
  if (N > kEntryStabilityCap) {
    warn(sink, "matrix order " + std::to_string(N) + " exceeds the verified stability cap " +
                   std::to_string(kEntryStabilityCap) +
                   "; entries beyond it have unverified accuracy");
  }
  OpMatrix M;
  M.basis = basis;
  M.alpha = alpha;
  M.side = side;
  M.N = N;
  M.entries = detail::assemble_signed(basis, alpha, side, N + 1, N + 1, sink);
  return M;
}

double oracle_entry(const JacobiBasis& basis, double alpha, Side side, std::size_t m,
                    std::size_t n) {
  if (m > 20 || n > 20) {
    throw std::out_of_range("oracle_entry is limited to m, n <= 20");
  }
  const JacobiBasis eb = (side == Side::Left) ? basis : basis.swapped();
  check_order(eb, alpha);
  const double be = eb.beta;
  const double ga = eb.gamma;
  const double al = alpha;

  // expansions of p_m and p_n in powers anchored at the operator's endpoint
  std::vector<double> cm(m + 1), cn(n + 1);
  for (std::size_t j = 0; j <= m; ++j) cm[j] = taylor_coeff_log(eb, m, j).log_abs;
  for (std::size_t k = 0; k <= n; ++k) cn[k] = taylor_coeff_log(eb, n, k).log_abs;

  // moment logs over the summed power j+k
  std::vector<double> lg_mom(m + n + 1);
  for (std::size_t t = 0; t <= m + n; ++t) {
    const double tt = static_cast<double>(t);
    if (!(tt + al + be + 1.0 > 0.0)) {
      throw DomainError("oracle moment integral diverges: power + alpha + beta + 1 <= 0");
    }
    lg_mom[t] = log_gamma_signed(tt + al + be + 1.0).log_abs +
                log_gamma_signed(ga + 1.0).log_abs -
                log_gamma_signed(tt + al + be + ga + 2.0).log_abs;
  }

  // sign of a term: endpoint-expansion parities (left side carries the
  // (-1)^{m+j} and (-1)^{n+k} from the left Taylor form; for the right side
  // both collapse to (-1)^{j+k}), times the sign of 1/Gamma(k+1+alpha)
  const int base_parity = (side == Side::Left) ? static_cast<int>((m + n) % 2) : 0;

  std::vector<double> lg((m + 1) * (n + 1), 0.0);
  std::vector<int> sg((m + 1) * (n + 1), 0);
  double L = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j <= m; ++j) {
    const double lg_fact_j = log_gamma_signed(static_cast<double>(j) + 1.0).log_abs;
    for (std::size_t k = 0; k <= n; ++k) {
      const SignedLogValue rv = log_rgamma_signed(static_cast<double>(k) + 1.0 + al);
      const std::size_t idx = j * (n + 1) + k;
      if (rv.sign == 0) continue;
      lg[idx] = cm[j] + cn[k] - lg_fact_j + rv.log_abs + lg_mom[j + k];
      const int parity = static_cast<int>((base_parity + j + k) % 2);
      sg[idx] = (parity == 0) ? rv.sign : -rv.sign;
      L = std::max(L, lg[idx]);
    }
  }
  if (L == -std::numeric_limits<double>::infinity()) return 0.0;

  double S;
  {
    // Reference path, so always sum in double-double over the 2D term grid:
    // anchor at the largest term, spread along its row by k-ratios, then
    // down/up each column by j-ratios; every ratio is a short exact-factor
    // rational, so the walk loses nothing to pre-rounded logs.
    std::size_t jstar = 0, kstar = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j <= m; ++j) {
      for (std::size_t k = 0; k <= n; ++k) {
        const std::size_t idx = j * (n + 1) + k;
        if (sg[idx] != 0 && lg[idx] > best) {
          best = lg[idx];
          jstar = j;
          kstar = k;
        }
      }
    }
    auto kratio = [&](std::size_t j, std::size_t k) {  // t(j,k+1)/t(j,k)
      const double jj = static_cast<double>(j), kk = static_cast<double>(k);
      const double nn = static_cast<double>(n);
      const DD num = dd_mul(dd_mul(dd3(be, ga, nn + kk + 1.0), DD(nn - kk)),
                            dd3(al, be, jj + kk + 1.0));
      const DD den = dd_mul(dd_mul(dd_sum(be, kk + 1.0), dd_sum(al, kk + 1.0)),
                            dd_add(dd3(al, be, jj + kk + 2.0), DD(ga)));
      return dd_neg(dd_div(num, den));
    };
    auto jratio = [&](std::size_t j, std::size_t k) {  // t(j+1,k)/t(j,k)
      const double jj = static_cast<double>(j), kk = static_cast<double>(k);
      const double mmm = static_cast<double>(m);
      const DD num = dd_mul(dd_mul(dd3(be, ga, mmm + jj + 1.0), DD(mmm - jj)),
                            dd3(al, be, jj + kk + 1.0));
      const DD den = dd_mul(dd_mul(dd_sum(be, jj + 1.0), DD(jj + 1.0)),
                            dd_add(dd3(al, be, jj + kk + 2.0), DD(ga)));
      return dd_neg(dd_div(num, den));
    };
    std::vector<DD> u((m + 1) * (n + 1));
    u[jstar * (n + 1) + kstar] = DD(static_cast<double>(sg[jstar * (n + 1) + kstar]));
    for (std::size_t k = kstar; k < n; ++k) {
      u[jstar * (n + 1) + k + 1] = dd_mul(u[jstar * (n + 1) + k], kratio(jstar, k));
    }
    for (std::size_t k = kstar; k-- > 0;) {
      u[jstar * (n + 1) + k] =
          dd_div(u[jstar * (n + 1) + k + 1], kratio(jstar, k));
    }
    for (std::size_t k = 0; k <= n; ++k) {
      for (std::size_t j = jstar; j < m; ++j) {
        u[(j + 1) * (n + 1) + k] = dd_mul(u[j * (n + 1) + k], jratio(j, k));
      }
      for (std::size_t j = jstar; j-- > 0;) {
        u[j * (n + 1) + k] = dd_div(u[(j + 1) * (n + 1) + k], jratio(j, k));
      }
    }
    DD total;
    for (std::size_t idx = 0; idx < u.size(); ++idx) total = dd_add(total, u[idx]);
    S = total.hi + total.lo;
  }

  const double common = (al + be + ga + 1.0) * std::log(eb.length());
  return S * std::exp(common + L);
}

SymmetryReport check_ultraspherical_symmetry(const JacobiBasis& basis, double alpha,
                                             std::size_t N) {
  if (basis.beta != basis.gamma) {
    throw DomainError("ultraspherical symmetry check requires beta == gamma");
  }
  const EntryEngine eng(basis, alpha, N, N);
  const std::size_t dim = N + 1;
  std::vector<double> A(dim * dim);
  for (std::size_t m = 0; m < dim; ++m) {
    for (std::size_t n = 0; n < dim; ++n) A[m * dim + n] = eng.unsigned_A(m, n);
  }
  SymmetryReport rep;
  for (std::size_t m = 0; m < dim; ++m) {
    for (std::size_t n = 0; n < m; ++n) {
      const double asym = std::abs(A[m * dim + n] - A[n * dim + m]);
      rep.max_asymmetry = std::max(rep.max_asymmetry, asym);
      // signed entries E(m,n) = (-1)^n A_mn; reflection-pairing identity
      const double Emn = (n % 2 == 0) ? A[m * dim + n] : -A[m * dim + n];
      const double Enm = (m % 2 == 0) ? A[n * dim + m] : -A[n * dim + m];
      const double flip = ((m + n) % 2 == 0) ? 1.0 : -1.0;
      rep.max_pairing_violation =
          std::max(rep.max_pairing_violation, std::abs(Emn - flip * Enm));
      if (m % 2 == n % 2) {
        double& slot = (m % 2 == 0) ? rep.even_block_asymmetry : rep.odd_block_asymmetry;
        slot = std::max(slot, std::abs(Emn - Enm));
      }
    }
  }
  return rep;
}

std::vector<double> singular_value_report(const OpMatrix& M) {
  if (M.N > 200) throw DomainError("singular_value_report is capped at N = 200");
  const std::size_t dim = M.N + 1;
  Eigen::MatrixXd E(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t m = 0; m < dim; ++m) {
    for (std::size_t n = 0; n < dim; ++n) {
      E(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)) =
          M.entries[m * dim + n];
    }
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(E);
  std::vector<double> out(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    out[i] = svd.singularValues()[static_cast<Eigen::Index>(i)];
  }
  return out;
}

}  // namespace jacfrac
