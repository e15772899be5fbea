#include "algfun/ball.hpp"

#include <algorithm>
#include <stdexcept>

namespace algfun {

long RealBall::effective_precision() const {
  if (rad.is_zero()) return working_digits();
  if (mid.is_zero()) return 0;
  double bits = mid.log2_abs() - rad.log2();
  long d = (long)std::floor(bits * 0.30102999566398114 + 1e-9);
  return d < 0 ? 0 : d;
}

double ComplexBall::log2_abs() const {
  double a = re.mid.log2_abs(), b = im.mid.log2_abs();
  if (a == -HUGE_VAL && b == -HUGE_VAL) return -HUGE_VAL;
  double hi = std::max(a, b), lo = std::min(a, b);
  // log2(hypot) = hi + log2(sqrt(1+2^(2(lo-hi))))
  double t = lo - hi > -30 ? 0.5 * std::log2(1.0 + std::exp2(2.0 * (lo - hi))) : 0.0;
  return hi + t;
}

long effective_precision(const ComplexBall& x) {
  Mag r = x.rad_max();
  if (r.is_zero())
    return std::min(x.re.working_digits(), x.im.working_digits());
  double m = x.log2_abs();
  if (m == -HUGE_VAL) return 0;
  double bits = m - r.log2();
  long d = (long)std::floor(bits * 0.30102999566398114 + 1e-9);
  return d < 0 ? 0 : d;
}

bool is_effective_zero(const ComplexBall& x) { return x.is_effective_zero(); }

RealBall rb_add(const RealBall& a, const RealBall& b) {
  RealBall r(bf::add(a.mid, b.mid));
  r.rad = a.rad + b.rad + Mag::ulp(r.mid);
  return r;
}

RealBall rb_sub(const RealBall& a, const RealBall& b) {
  RealBall r(bf::sub(a.mid, b.mid));
  r.rad = a.rad + b.rad + Mag::ulp(r.mid);
  return r;
}

RealBall rb_mul(const RealBall& a, const RealBall& b) {
  RealBall r(bf::mul(a.mid, b.mid));
  r.rad = Mag::from_bigfloat(a.mid) * b.rad + Mag::from_bigfloat(b.mid) * a.rad +
          a.rad * b.rad + Mag::ulp(r.mid);
  return r;
}

RealBall rb_div(const RealBall& a, const RealBall& b) {
  if (b.is_effective_zero())
    throw std::domain_error("ball division by effective zero");
  RealBall r(bf::div(a.mid, b.mid));
  // |d(a/b)| <= (ra + |a/b| rb) / (|b| - rb)
  double lb = b.mid.log2_abs();
  double t = std::exp2(b.rad.log2() - lb);  // rb/|b| < 1
  double f = 1.0 / (1.0 - std::min(t, 0.9999));
  Mag num = a.rad + Mag::from_bigfloat(r.mid) * b.rad;
  if (!num.is_zero()) {
    num = num.scaled(f / std::exp2(lb - std::floor(lb)));
    num.e -= (long long)std::floor(lb);
    num.norm();
  }
  r.rad = num + Mag::ulp(r.mid);
  return r;
}

RealBall rb_neg(const RealBall& a) {
  RealBall r(bf::neg(a.mid));
  r.rad = a.rad;
  return r;
}

RealBall rb_with_precision(const RealBall& a, long digits) {
  RealBall r;
  r.mid = BigFloat(bits_for_digits(digits));
  mpfr_set(r.mid.raw(), a.mid.raw(), MPFR_RNDN);
  Mag floor_rad;
  if (!a.mid.is_zero())
    floor_rad = Mag::from_bigfloat(a.mid) * Mag::from_pow10((double)-digits);
  r.rad = Mag::max(a.rad, floor_rad);
  r.rad = r.rad + Mag::ulp(r.mid);
  return r;
}

ComplexBall with_precision(const ComplexBall& x, long digits) {
  return {rb_with_precision(x.re, digits), rb_with_precision(x.im, digits)};
}

ComplexBall cb_add(const ComplexBall& a, const ComplexBall& b) {
  return {rb_add(a.re, b.re), rb_add(a.im, b.im)};
}
ComplexBall cb_sub(const ComplexBall& a, const ComplexBall& b) {
  return {rb_sub(a.re, b.re), rb_sub(a.im, b.im)};
}

ComplexBall cb_mul(const ComplexBall& a, const ComplexBall& b) {
  return {rb_sub(rb_mul(a.re, b.re), rb_mul(a.im, b.im)),
          rb_add(rb_mul(a.re, b.im), rb_mul(a.im, b.re))};
}

void cb_addmul(ComplexBall& acc, const ComplexBall& b, const ComplexBall& c) {
  acc = cb_add(acc, cb_mul(b, c));
}

ComplexBall cb_div(const ComplexBall& a, const ComplexBall& b) {
  if (b.is_effective_zero())
    throw std::domain_error("complex ball division by effective zero");
  ComplexBall num = cb_mul(a, cb_conj(b));
  RealBall den = rb_add(rb_mul(b.re, b.re), rb_mul(b.im, b.im));
  return {rb_div(num.re, den), rb_div(num.im, den)};
}

ComplexBall cb_neg(const ComplexBall& a) { return {rb_neg(a.re), rb_neg(a.im)}; }

ComplexBall cb_conj(const ComplexBall& a) { return {a.re, rb_neg(a.im)}; }

ComplexBall cb_scale_long(const ComplexBall& a, long k) {
  ComplexBall r = a;
  mpfr_mul_si(r.re.mid.raw(), a.re.mid.raw(), k, MPFR_RNDN);
  mpfr_mul_si(r.im.mid.raw(), a.im.mid.raw(), k, MPFR_RNDN);
  double f = std::fabs((double)k);
  r.re.rad = a.re.rad.scaled(f) + Mag::ulp(r.re.mid);
  r.im.rad = a.im.rad.scaled(f) + Mag::ulp(r.im.mid);
  return r;
}

RealBall cb_abs(const ComplexBall& a) {
  RealBall r;
  mpfr_prec_t p = std::max(a.re.mid.prec(), a.im.mid.prec());
  r.mid = BigFloat(p);
  mpfr_hypot(r.mid.raw(), a.re.mid.raw(), a.im.mid.raw(), MPFR_RNDN);
  r.rad = a.re.rad + a.im.rad + Mag::ulp(r.mid);
  return r;
}

ComplexBall cb_pow_long(const ComplexBall& a, long k) {
  long digits = a.working_digits();
  if (k == 0) return ComplexBall::exact_long(1, digits);
  bool invert = k < 0;
  unsigned long n = invert ? (unsigned long)(-k) : (unsigned long)k;
  ComplexBall base = a, acc = ComplexBall::exact_long(1, digits);
  while (n) {
    if (n & 1) acc = cb_mul(acc, base);
    n >>= 1;
    if (n) base = cb_mul(base, base);
  }
  if (invert) acc = cb_div(ComplexBall::exact_long(1, digits), acc);
  return acc;
}

ComplexBall cb_root(const ComplexBall& a, long c) {
  if (c == 1) return a;
  if (a.is_effective_zero())
    throw std::domain_error("principal root of effective zero");
  mpfr_prec_t p = std::max(a.re.mid.prec(), a.im.mid.prec());
  BigFloat r(p), th(p), rout(p), cth(p), sth(p);
  mpfr_hypot(r.raw(), a.re.mid.raw(), a.im.mid.raw(), MPFR_RNDN);
  mpfr_atan2(th.raw(), a.im.mid.raw(), a.re.mid.raw(), MPFR_RNDN);
  mpfr_rootn_ui(rout.raw(), r.raw(), (unsigned long)c, MPFR_RNDN);
  mpfr_div_si(th.raw(), th.raw(), c, MPFR_RNDN);
  mpfr_cos(cth.raw(), th.raw(), MPFR_RNDN);
  mpfr_sin(sth.raw(), th.raw(), MPFR_RNDN);
  ComplexBall out;
  out.re.mid = BigFloat(p);
  out.im.mid = BigFloat(p);
  mpfr_mul(out.re.mid.raw(), rout.raw(), cth.raw(), MPFR_RNDN);
  mpfr_mul(out.im.mid.raw(), rout.raw(), sth.raw(), MPFR_RNDN);
  // first-order: |d(z^(1/c))| = (1/c) |z|^(1/c - 1) |dz|
  Mag din = a.re.rad + a.im.rad;
  double l2z = a.log2_abs();
  Mag deriv = Mag::from_2exp((long long)std::ceil(l2z * (1.0 / c - 1.0) + 1.0));
  out.re.rad = din * deriv.scaled(1.0 / c) + Mag::ulp(out.re.mid) + Mag::ulp(rout);
  out.im.rad = out.re.rad;
  return out;
}

ComplexBall cb_unit_phase(long k, long c, long digits) {
  mpfr_prec_t p = bits_for_digits(digits);
  BigFloat th(p), cth(p), sth(p);
  mpfr_const_pi(th.raw(), MPFR_RNDN);
  mpfr_mul_si(th.raw(), th.raw(), 2 * (k % c), MPFR_RNDN);
  mpfr_div_si(th.raw(), th.raw(), c, MPFR_RNDN);
  mpfr_cos(cth.raw(), th.raw(), MPFR_RNDN);
  mpfr_sin(sth.raw(), th.raw(), MPFR_RNDN);
  ComplexBall out;
  out.re.mid = cth;
  out.im.mid = sth;
  out.re.rad = Mag::from_2exp(-(long long)p + 4);
  out.im.rad = out.re.rad;
  return out;
}

std::string rb_str(const RealBall& b, int max_digits) {
  if (b.mid.is_zero()) return b.rad.is_zero() ? "0" : "0(+-" + b.rad.str() + ")";
  long digs = max_digits > 0 ? max_digits : b.effective_precision();
  if (digs < 1) digs = 1;
  if (digs > b.working_digits()) digs = b.working_digits();
  mpfr_exp_t e;
  char* s = mpfr_get_str(nullptr, &e, 10, (size_t)digs, b.mid.raw(), MPFR_RNDN);
  std::string m(s);
  mpfr_free_str(s);
  bool neg = !m.empty() && m[0] == '-';
  std::string digits_part = neg ? m.substr(1) : m;
  std::string out = (neg ? "-" : "") + digits_part.substr(0, 1);
  if (digits_part.size() > 1) out += "." + digits_part.substr(1);
  out += "e" + std::to_string((long)e - 1);
  return out;
}

std::string cb_str(const ComplexBall& b, int max_digits) {
  std::string re = rb_str(b.re, max_digits);
  std::string im = rb_str(b.im, max_digits);
  return re + (b.im.mid.sign() < 0 || im[0] == '-' ? " " : " +") + im + "*I";
}

double BigComplex::log2_abs() const {
  double a = re.log2_abs(), b = im.log2_abs();
  if (a == -HUGE_VAL && b == -HUGE_VAL) return -HUGE_VAL;
  double hi = std::max(a, b), lo = std::min(a, b);
  double t = lo - hi > -30 ? 0.5 * std::log2(1.0 + std::exp2(2.0 * (lo - hi))) : 0.0;
  return hi + t;
}

BigComplex bc_add(const BigComplex& a, const BigComplex& b) {
  return {bf::add(a.re, b.re), bf::add(a.im, b.im)};
}
BigComplex bc_sub(const BigComplex& a, const BigComplex& b) {
  return {bf::sub(a.re, b.re), bf::sub(a.im, b.im)};
}
BigComplex bc_mul(const BigComplex& a, const BigComplex& b) {
  return {bf::sub(bf::mul(a.re, b.re), bf::mul(a.im, b.im)),
          bf::add(bf::mul(a.re, b.im), bf::mul(a.im, b.re))};
}
BigComplex bc_div(const BigComplex& a, const BigComplex& b) {
  mpfr_prec_t p = std::max(std::max(a.re.prec(), a.im.prec()),
                           std::max(b.re.prec(), b.im.prec()));
  BigFloat den(p);
  mpfr_fmma(den.raw(), b.re.raw(), b.re.raw(), b.im.raw(), b.im.raw(), MPFR_RNDN);
  BigComplex num = bc_mul(a, {b.re, bf::neg(b.im)});
  return {bf::div(num.re, den), bf::div(num.im, den)};
}
BigComplex bc_neg(const BigComplex& a) { return {bf::neg(a.re), bf::neg(a.im)}; }
BigComplex bc_scale_double(const BigComplex& a, double f) {
  BigComplex r = a;
  mpfr_mul_d(r.re.raw(), a.re.raw(), f, MPFR_RNDN);
  mpfr_mul_d(r.im.raw(), a.im.raw(), f, MPFR_RNDN);
  return r;
}
BigFloat bc_abs(const BigComplex& a) {
  BigFloat r(std::max(a.re.prec(), a.im.prec()));
  mpfr_hypot(r.raw(), a.re.raw(), a.im.raw(), MPFR_RNDN);
  return r;
}

}  // namespace algfun
