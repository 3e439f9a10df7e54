#pragma once

#include <cmath>

namespace jacfrac {

/*
 * Minimal double-double (compensated pair) arithmetic: a value is an unevaluated
 * sum hi + lo with |lo| <= ulp(hi)/2, giving ~32 significant digits.
 *
 * This is the fallback engine for the alternating operational-matrix sums.
 * Each successive term is produced from its neighbour by a short rational
 * ratio, so only +,-,*,/ are needed -- no transcendentals.  Based on the
 * classic Dekker/Knuth error-free transforms; products use FMA.
 */
struct DD {
  double hi = 0.0;
  double lo = 0.0;

  DD() = default;
  DD(double h) : hi(h), lo(0.0) {}
  DD(double h, double l) : hi(h), lo(l) {}

  double to_double() const { return hi + lo; }
};

namespace ddk {  // kernels

inline DD two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DD quick_two_sum(double a, double b) {
  double s = a + b;
  double err = b - (s - a);
  return {s, err};
}

inline DD two_prod(double a, double b) {
  double p = a * b;
  double err = std::fma(a, b, -p);
  return {p, err};
}

}  // namespace ddk

inline DD dd_add(DD a, DD b) {
  DD s = ddk::two_sum(a.hi, b.hi);
  DD t = ddk::two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = ddk::quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return ddk::quick_two_sum(s.hi, s.lo);
}

inline DD dd_neg(DD a) { return {-a.hi, -a.lo}; }

inline DD dd_sub(DD a, DD b) { return dd_add(a, dd_neg(b)); }

inline DD dd_mul(DD a, DD b) {
  DD p = ddk::two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return ddk::quick_two_sum(p.hi, p.lo);
}

inline DD dd_div(DD a, DD b) {
  double q1 = a.hi / b.hi;
  DD r = dd_sub(a, dd_mul(DD(q1), b));
  double q2 = r.hi / b.hi;
  r = dd_sub(r, dd_mul(DD(q2), b));
  double q3 = r.hi / b.hi;
  DD q = ddk::quick_two_sum(q1, q2);
  q.lo += q3;
  return ddk::quick_two_sum(q.hi, q.lo);
}

// exact double-double value of a+b for plain doubles (e.g. n + beta)
inline DD dd_sum(double a, double b) { return ddk::two_sum(a, b); }

}  // namespace jacfrac
