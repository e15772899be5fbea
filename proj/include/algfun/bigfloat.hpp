#pragma once

#include <mpfr.h>

#include <algorithm>
#include <climits>
#include <cmath>
#include <string>
#include <utility>

namespace algfun {

inline mpfr_prec_t bits_for_digits(long digits) {
  // 10^d needs d*log2(10) bits; add guard bits for intermediate rounding.
  if (digits < 1) digits = 1;
  return (mpfr_prec_t)(std::ceil(digits * 3.3219280948873623) + 32);
}

inline long digits_for_bits(mpfr_prec_t bits) {
  return (long)((bits - 32) / 3.3219280948873623 + 0.01);
}

// RAII wrapper over mpfr_t. Each value carries its own precision; binary
// operations round into a result of the max operand precision unless an
// explicit precision is requested.
class BigFloat {
 public:
  BigFloat() { mpfr_init2(v_, 64); mpfr_set_zero(v_, 1); }
  explicit BigFloat(mpfr_prec_t prec) {
    mpfr_init2(v_, prec < MPFR_PREC_MIN ? MPFR_PREC_MIN : prec);
    mpfr_set_zero(v_, 1);
  }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  static BigFloat from_long(long x, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_si(r.v_, x, MPFR_RNDN);
    return r;
  }
  static BigFloat from_double(double x, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_d(r.v_, x, MPFR_RNDN);
    return r;
  }
  static BigFloat from_str(const std::string& s, mpfr_prec_t prec) {
    BigFloat r(prec);
    mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN);
    return r;
  }

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  bool is_zero() const { return mpfr_zero_p(v_); }
  int sign() const { return mpfr_sgn(v_); }
  // Exponent e with |x| in [2^(e-1), 2^e); LONG_MIN for zero.
  long exp2() const { return mpfr_zero_p(v_) ? LONG_MIN : (long)mpfr_get_exp(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  // log2(|x|) as a double, -inf for zero.
  double log2_abs() const {
    if (mpfr_zero_p(v_)) return -1.0 / 0.0;
    long e = (long)mpfr_get_exp(v_);
    mpfr_t t;
    mpfr_init2(t, 64);
    mpfr_abs(t, v_, MPFR_RNDN);
    mpfr_mul_2si(t, t, -e, MPFR_RNDN);  // mantissa in [0.5,1)
    double m = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return (double)e + std::log2(m);
  }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  friend void swap(BigFloat& a, BigFloat& b) { mpfr_swap(a.v_, b.v_); }

 private:
  mpfr_t v_;
};

namespace bf {

inline mpfr_prec_t join(const BigFloat& a, const BigFloat& b) {
  return std::max(a.prec(), b.prec());
}

inline BigFloat add(const BigFloat& a, const BigFloat& b) {
  BigFloat r(join(a, b));
  mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
inline BigFloat sub(const BigFloat& a, const BigFloat& b) {
  BigFloat r(join(a, b));
  mpfr_sub(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
inline BigFloat mul(const BigFloat& a, const BigFloat& b) {
  BigFloat r(join(a, b));
  mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
inline BigFloat div(const BigFloat& a, const BigFloat& b) {
  BigFloat r(join(a, b));
  mpfr_div(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}
inline BigFloat neg(const BigFloat& a) {
  BigFloat r(a.prec());
  mpfr_neg(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
inline BigFloat abs(const BigFloat& a) {
  BigFloat r(a.prec());
  mpfr_abs(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}
inline int cmp(const BigFloat& a, const BigFloat& b) {
  return mpfr_cmp(a.raw(), b.raw());
}
inline int cmpabs(const BigFloat& a, const BigFloat& b) {
  return mpfr_cmpabs(a.raw(), b.raw());
}

}  // namespace bf

}  // namespace algfun
