#pragma once

#include <vector>

#include "algfun/ball.hpp"

namespace algfun {

// Dense truncated power series over complex balls.
namespace ser {

using Series = std::vector<ComplexBall>;

inline Series zero(size_t len, long digits) {
  return Series(len, ComplexBall::exact_long(0, digits));
}

inline void trunc(Series& a, size_t len) {
  if (a.size() > len) a.resize(len);
}

// a + b
inline Series add(const Series& a, const Series& b, long digits) {
  Series r = zero(std::max(a.size(), b.size()), digits);
  for (size_t i = 0; i < r.size(); ++i) {
    if (i < a.size() && i < b.size())
      r[i] = cb_add(a[i], b[i]);
    else if (i < a.size())
      r[i] = a[i];
    else
      r[i] = b[i];
  }
  return r;
}

inline Series sub(const Series& a, const Series& b, long digits) {
  Series r = zero(std::max(a.size(), b.size()), digits);
  for (size_t i = 0; i < r.size(); ++i) {
    if (i < a.size() && i < b.size())
      r[i] = cb_sub(a[i], b[i]);
    else if (i < a.size())
      r[i] = a[i];
    else
      r[i] = cb_neg(b[i]);
  }
  return r;
}

// a * b truncated to len coefficients
inline Series mul_trunc(const Series& a, const Series& b, size_t len, long digits) {
  size_t out_len = std::min(len, a.size() + b.size() - (a.empty() || b.empty() ? 0 : 1));
  if (a.empty() || b.empty()) return {};
  Series r = zero(out_len, digits);
  for (size_t i = 0; i < a.size() && i < out_len; ++i) {
    if (a[i].is_effective_zero() && a[i].rad_max().is_zero()) continue;
    size_t jmax = std::min(b.size(), out_len - i);
    for (size_t j = 0; j < jmax; ++j) cb_addmul(r[i + j], a[i], b[j]);
  }
  return r;
}

// a / b truncated; b[0] must not be an effective zero
inline Series div_trunc(const Series& a, const Series& b, size_t len, long digits) {
  Series q = zero(len, digits);
  Series rem = a;
  rem.resize(len, ComplexBall::exact_long(0, digits));
  for (size_t k = 0; k < len; ++k) {
    ComplexBall c = cb_div(rem[k], b[0]);
    q[k] = c;
    size_t jmax = std::min(b.size(), len - k);
    ComplexBall nc = cb_neg(c);
    for (size_t j = 0; j < jmax; ++j) cb_addmul(rem[k + j], nc, b[j]);
  }
  return q;
}

// index of the first coefficient that is not effectively zero, or -1
inline long first_nonzero(const Series& a) {
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_effective_zero()) return (long)i;
  return -1;
}

inline long count_nonzero(const Series& a) {
  long n = 0;
  for (auto& c : a)
    if (!c.is_effective_zero()) ++n;
  return n;
}

}  // namespace ser

}  // namespace algfun
