#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace algfun {

// Small exact rational used for series exponents and polygon slopes.
// Numerators and denominators stay tiny (products of cycle sizes), so
// int64 with __int128 intermediates is plenty; normalize() asserts fit.
struct Frac {
  long long num = 0;
  long long den = 1;

  Frac() = default;
  Frac(long long n) : num(n), den(1) {}
  Frac(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::domain_error("Frac: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  static Frac from128(__int128 n, __int128 d) {
    if (d < 0) { n = -n; d = -d; }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) { __int128 t = a % b; a = b; b = t; }
    if (a > 1) { n /= a; d /= a; }
    constexpr __int128 lim = INT64_MAX;
    if (n > lim || n < -lim || d > lim)
      throw std::overflow_error("Frac: exponent overflow");
    Frac f;
    f.num = (long long)n;
    f.den = (long long)d;
    return f;
  }

  bool is_integer() const { return den == 1; }
  bool is_zero() const { return num == 0; }

  friend Frac operator+(const Frac& a, const Frac& b) {
    return from128((__int128)a.num * b.den + (__int128)b.num * a.den,
                   (__int128)a.den * b.den);
  }
  friend Frac operator-(const Frac& a, const Frac& b) {
    return from128((__int128)a.num * b.den - (__int128)b.num * a.den,
                   (__int128)a.den * b.den);
  }
  friend Frac operator*(const Frac& a, const Frac& b) {
    return from128((__int128)a.num * b.num, (__int128)a.den * b.den);
  }
  friend Frac operator/(const Frac& a, const Frac& b) {
    if (b.num == 0) throw std::domain_error("Frac: division by zero");
    return from128((__int128)a.num * b.den, (__int128)a.den * b.num);
  }
  Frac operator-() const { Frac f; f.num = -num; f.den = den; return f; }

  friend bool operator==(const Frac& a, const Frac& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Frac& a, const Frac& b) { return !(a == b); }
  friend bool operator<(const Frac& a, const Frac& b) {
    return (__int128)a.num * b.den < (__int128)b.num * a.den;
  }
  friend bool operator>(const Frac& a, const Frac& b) { return b < a; }
  friend bool operator<=(const Frac& a, const Frac& b) { return !(b < a); }
  friend bool operator>=(const Frac& a, const Frac& b) { return !(a < b); }

  long long floor() const {
    long long q = num / den;
    if (num % den != 0 && num < 0) --q;
    return q;
  }

  double to_double() const { return (double)num / (double)den; }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

inline long long lcm_ll(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  __int128 l = (__int128)(a / std::gcd(a, b)) * b;
  if (l > INT64_MAX) throw std::overflow_error("lcm overflow");
  return (long long)l;
}

}  // namespace algfun
