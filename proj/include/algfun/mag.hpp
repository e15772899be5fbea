#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "algfun/bigfloat.hpp"

namespace algfun {

// Upper bound on an absolute error, stored as m * 2^e with m in [1,2).
// Exponents go far beyond double range (radii like 1e-1003 are routine).
// Operations round the mantissa up by a small slack factor; this tracks
// error growth faithfully but is not a certified enclosure.
struct Mag {
  double m = 0.0;   // mantissa in [1,2), or 0
  long long e = 0;  // power of two

  Mag() = default;

  static Mag zero() { return Mag(); }

  static Mag inf() {
    Mag g;
    g.m = HUGE_VAL;
    return g;
  }

  bool is_zero() const { return m == 0.0; }
  bool is_inf() const { return std::isinf(m); }

  void norm() {
    if (m == 0.0 || std::isinf(m)) return;
    int k;
    m = std::frexp(m, &k);  // m in [0.5,1)
    m *= 2.0;
    e += k - 1;
  }

  static Mag from_double(double x) {
    Mag g;
    if (x == 0.0) return g;
    g.m = std::fabs(x) * 1.0000000001;
    g.norm();
    return g;
  }

  // 10^d
  static Mag from_pow10(double d) {
    Mag g;
    double e2 = d * 3.321928094887362;
    g.e = (long long)std::floor(e2);
    g.m = std::exp2(e2 - (double)g.e) * 1.0000000001;
    g.norm();
    return g;
  }

  static Mag from_2exp(long long e2) {
    Mag g;
    g.m = 1.0000000001;
    g.e = e2;
    return g;
  }

  // |x| rounded up a little.
  static Mag from_bigfloat(const BigFloat& x) {
    Mag g;
    if (x.is_zero()) return g;
    double l2 = x.log2_abs();
    g.e = (long long)std::floor(l2);
    g.m = std::exp2(l2 - (double)g.e) * 1.0000000001;
    g.norm();
    return g;
  }

  // One ulp of x at its own precision (rounding error of the midpoint).
  static Mag ulp(const BigFloat& x) {
    if (x.is_zero()) return Mag();
    return from_2exp(x.exp2() - (long long)x.prec());
  }

  double log2() const {
    if (m == 0.0) return -HUGE_VAL;
    if (std::isinf(m)) return HUGE_VAL;
    return (double)e + std::log2(m);
  }
  double log10() const { return log2() * 0.30102999566398114; }

  friend Mag operator+(const Mag& a, const Mag& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_inf() || b.is_inf()) return inf();
    const Mag *hi = &a, *lo = &b;
    if (b.e > a.e) { hi = &b; lo = &a; }
    long long d = hi->e - lo->e;
    Mag g;
    g.e = hi->e;
    g.m = hi->m + (d > 120 ? 0.0 : std::ldexp(lo->m, (int)-d));
    g.m *= 1.0000000001;
    g.norm();
    return g;
  }

  friend Mag operator*(const Mag& a, const Mag& b) {
    if (a.is_zero() || b.is_zero()) return Mag();
    if (a.is_inf() || b.is_inf()) return inf();
    Mag g;
    g.m = a.m * b.m * 1.0000000001;
    g.e = a.e + b.e;
    g.norm();
    return g;
  }

  Mag scaled(double f) const {
    if (is_zero() || f == 0.0) return Mag();
    Mag g = *this;
    g.m *= f * 1.0000000001;
    g.norm();
    return g;
  }

  friend bool operator<(const Mag& a, const Mag& b) {
    if (a.is_zero()) return !b.is_zero();
    if (b.is_zero()) return false;
    if (b.is_inf()) return !a.is_inf();
    if (a.is_inf()) return false;
    if (a.e != b.e) return a.e < b.e;
    return a.m < b.m;
  }

  static Mag max(const Mag& a, const Mag& b) { return a < b ? b : a; }

  // true if |x| <= this bound
  bool geq_abs(const BigFloat& x) const {
    if (x.is_zero()) return true;
    if (is_zero()) return false;
    if (is_inf()) return true;
    return x.log2_abs() <= log2() + 1e-12;
  }

  std::string str() const {
    if (is_zero()) return "0";
    if (is_inf()) return "inf";
    double l10 = log10();
    return "1e" + std::to_string((long long)std::ceil(l10));
  }
};

}  // namespace algfun
