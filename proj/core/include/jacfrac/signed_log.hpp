#pragma once

#include <cmath>

namespace jacfrac {

/*
 * Sign/log-magnitude representation of a real number: value = sign * exp(log_abs).
 * Products of gamma and beta factors routinely overflow double range long before
 * the assembled sums do, so every factor is kept in this form and only the final
 * scaled sum is exponentiated.
 *
 * sign is -1, 0 or +1.  For sign == 0 the log_abs field is -inf by convention.
 */
struct SignedLogValue {
  int sign = 0;
  double log_abs = -INFINITY;

  static SignedLogValue zero() { return {0, -INFINITY}; }
  static SignedLogValue one() { return {1, 0.0}; }

  static SignedLogValue from_double(double x) {
    if (x == 0.0) return zero();
    return {x > 0.0 ? 1 : -1, std::log(std::fabs(x))};
  }

  double to_double() const {
    if (sign == 0) return 0.0;
    return sign * std::exp(log_abs);
  }

  bool is_zero() const { return sign == 0; }

  friend SignedLogValue operator*(SignedLogValue a, SignedLogValue b) {
    if (a.sign == 0 || b.sign == 0) return zero();
    return {a.sign * b.sign, a.log_abs + b.log_abs};
  }

  friend SignedLogValue operator/(SignedLogValue a, SignedLogValue b) {
    // division by an exact zero is the caller's bug; surface it as inf
    if (a.sign == 0) return zero();
    return {a.sign * b.sign, a.log_abs - b.log_abs};
  }

  SignedLogValue pow_int(int k) const {
    if (sign == 0) return k == 0 ? one() : zero();
    return {(k % 2 == 0) ? 1 : sign, log_abs * k};
  }

  SignedLogValue negate() const { return {-sign, log_abs}; }
};

// Kahan compensated accumulator, used for the linear-space summation of
// signed-log terms after scaling by the largest magnitude.
struct KahanSum {
  double sum = 0.0;
  double c = 0.0;

  void add(double x) {
    double y = x - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

}  // namespace jacfrac
