#pragma once

#include <gmpxx.h>

#include <string>

#include "algfun/ball.hpp"

namespace algfun {

// Exact complex rational coefficient. All arithmetic is exact; rounding
// happens only on conversion to a ball.
struct GaussianRational {
  mpq_class re, im;

  GaussianRational() : re(0), im(0) {}
  GaussianRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }
  static GaussianRational integer(long n) { return {mpq_class(n), mpq_class(0)}; }
  static GaussianRational ratio(long p, long q) {
    mpq_class r(p, q);
    r.canonicalize();
    return {r, mpq_class(0)};
  }
  static GaussianRational imag_unit() { return {mpq_class(0), mpq_class(1)}; }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    mpq_class n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  GaussianRational operator-() const { return {-re, -im}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
    return !(a == b);
  }

  GaussianRational conj() const { return {re, -im}; }

  GaussianRational pow(unsigned long k) const {
    GaussianRational acc = integer(1), base = *this;
    while (k) {
      if (k & 1) acc = acc * base;
      k >>= 1;
      if (k) base = base * base;
    }
    return acc;
  }

  ComplexBall to_ball(long digits) const {
    mpfr_prec_t p = bits_for_digits(digits);
    ComplexBall b;
    b.re.mid = BigFloat(p);
    b.im.mid = BigFloat(p);
    mpfr_set_q(b.re.mid.raw(), re.get_mpq_t(), MPFR_RNDN);
    mpfr_set_q(b.im.mid.raw(), im.get_mpq_t(), MPFR_RNDN);
    // exact values (small denominators representable in binary) keep rad 0
    if (mpfr_cmp_q(b.re.mid.raw(), re.get_mpq_t()) != 0) b.re.rad = Mag::ulp(b.re.mid);
    if (mpfr_cmp_q(b.im.mid.raw(), im.get_mpq_t()) != 0) b.im.rad = Mag::ulp(b.im.mid);
    return b;
  }

  std::string str() const {
    auto one = [](const mpq_class& q) { return q.get_str(); };
    if (im == 0) return one(re);
    if (re == 0) return one(im) + "*i";
    return one(re) + (im > 0 ? "+" : "") + one(im) + "*i";
  }
};

}  // namespace algfun
