#pragma once

#include <string>

#include "algfun/bigfloat.hpp"
#include "algfun/fraction.hpp"
#include "algfun/mag.hpp"

namespace algfun {

// Midpoint-radius real. The radius is an absolute error bound; arithmetic
// never shrinks it. Working precision is the midpoint's mpfr precision.
struct RealBall {
  BigFloat mid;
  Mag rad;

  RealBall() = default;
  explicit RealBall(BigFloat m) : mid(std::move(m)) {}
  RealBall(BigFloat m, Mag r) : mid(std::move(m)), rad(r) {}

  static RealBall exact_long(long x, long digits) {
    return RealBall(BigFloat::from_long(x, bits_for_digits(digits)));
  }
  static RealBall from_double(double x, long digits) {
    RealBall b(BigFloat::from_double(x, bits_for_digits(digits)));
    b.rad = Mag::ulp(b.mid);
    if (x == (double)(long)x) b.rad = Mag::zero();
    return b;
  }

  long working_digits() const { return digits_for_bits(mid.prec()); }
  bool is_effective_zero() const { return rad.geq_abs(mid); }
  long effective_precision() const;

  double to_double() const { return mid.to_double(); }
};

RealBall rb_add(const RealBall& a, const RealBall& b);
RealBall rb_sub(const RealBall& a, const RealBall& b);
RealBall rb_mul(const RealBall& a, const RealBall& b);
RealBall rb_div(const RealBall& a, const RealBall& b);
RealBall rb_neg(const RealBall& a);
RealBall rb_with_precision(const RealBall& a, long digits);

// Complex ball as a pair of real balls; component radii are independent.
struct ComplexBall {
  RealBall re, im;

  ComplexBall() = default;
  ComplexBall(RealBall r, RealBall i) : re(std::move(r)), im(std::move(i)) {}

  static ComplexBall exact_long(long x, long digits) {
    return {RealBall::exact_long(x, digits), RealBall::exact_long(0, digits)};
  }
  static ComplexBall from_doubles(double x, double y, long digits) {
    return {RealBall::from_double(x, digits), RealBall::from_double(y, digits)};
  }

  long working_digits() const { return re.working_digits(); }
  bool is_effective_zero() const {
    return re.is_effective_zero() && im.is_effective_zero();
  }
  Mag rad_max() const { return Mag::max(re.rad, im.rad); }
  double abs_double() const {
    double x = re.to_double(), y = im.to_double();
    return std::hypot(x, y);
  }
  // log2 of the complex magnitude, -inf when both midpoints are zero
  double log2_abs() const;
};

long effective_precision(const ComplexBall& x);
bool is_effective_zero(const ComplexBall& x);
ComplexBall with_precision(const ComplexBall& x, long digits);

ComplexBall cb_add(const ComplexBall& a, const ComplexBall& b);
ComplexBall cb_sub(const ComplexBall& a, const ComplexBall& b);
ComplexBall cb_mul(const ComplexBall& a, const ComplexBall& b);
ComplexBall cb_div(const ComplexBall& a, const ComplexBall& b);
ComplexBall cb_neg(const ComplexBall& a);
ComplexBall cb_conj(const ComplexBall& a);
ComplexBall cb_scale_long(const ComplexBall& a, long k);
// a + b*c, the series-arithmetic workhorse
void cb_addmul(ComplexBall& acc, const ComplexBall& b, const ComplexBall& c);

RealBall cb_abs(const ComplexBall& a);
ComplexBall cb_pow_long(const ComplexBall& a, long k);
// principal value of a^(1/c), c >= 1
ComplexBall cb_root(const ComplexBall& a, long c);
// e^(2*pi*i*k/c) at the given precision
ComplexBall cb_unit_phase(long k, long c, long digits);

std::string rb_str(const RealBall& b, int max_digits = 0);
std::string cb_str(const ComplexBall& b, int max_digits = 0);

// Plain arbitrary-precision complex (no radius) for inner loops where
// error tracking is not needed: root refinement and path integration.
struct BigComplex {
  BigFloat re, im;

  BigComplex() = default;
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
  static BigComplex zero(mpfr_prec_t p) {
    return {BigFloat(p), BigFloat(p)};
  }
  static BigComplex from_doubles(double x, double y, mpfr_prec_t p) {
    return {BigFloat::from_double(x, p), BigFloat::from_double(y, p)};
  }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  double abs_double() const {
    return std::hypot(re.to_double(), im.to_double());
  }
  double log2_abs() const;
};

BigComplex bc_add(const BigComplex& a, const BigComplex& b);
BigComplex bc_sub(const BigComplex& a, const BigComplex& b);
BigComplex bc_mul(const BigComplex& a, const BigComplex& b);
BigComplex bc_div(const BigComplex& a, const BigComplex& b);
BigComplex bc_neg(const BigComplex& a);
BigComplex bc_scale_double(const BigComplex& a, double f);
BigFloat bc_abs(const BigComplex& a);

inline BigComplex midpoint(const ComplexBall& b) {
  return {b.re.mid, b.im.mid};
}
inline ComplexBall ball_from(const BigComplex& z) {
  ComplexBall b;
  b.re.mid = z.re;
  b.im.mid = z.im;
  b.re.rad = Mag::ulp(z.re);
  b.im.rad = Mag::ulp(z.im);
  return b;
}

}  // namespace algfun
