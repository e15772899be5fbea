#include <vector>

#include "algfun/poly.hpp"

namespace algfun {

namespace {

// polynomial in w with coefficients in Q(i)[z]
using WPoly = std::vector<ExactUniPoly>;

int wdeg(const WPoly& p) {
  for (int i = (int)p.size() - 1; i >= 0; --i)
    if (!p[i].is_zero()) return i;
  return -1;
}

void wtrim(WPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

WPoly from_exact(const ExactPoly& f) {
  WPoly p(f.w_degree() + 1);
  for (int j = 0; j < (int)p.size(); ++j) p[j] = f.w_coefficient(j);
  wtrim(p);
  return p;
}

ExactUniPoly pow_poly(ExactUniPoly base, int e) {
  ExactUniPoly acc;
  acc.c = {GaussianRational::integer(1)};
  while (e) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

// pseudo-remainder: lc(B)^(dA-dB+1) * A  mod  B
WPoly prem(WPoly A, const WPoly& B) {
  int dB = wdeg(B);
  const ExactUniPoly& lcB = B[dB];
  int e = wdeg(A) - dB + 1;
  while (true) {
    int dA = wdeg(A);
    if (dA < dB) break;
    // A = lcB*A - lc(A)*w^(dA-dB)*B
    ExactUniPoly lcA = A[dA];
    WPoly next(dA);  // degree drops by at least one
    next.assign(dA, ExactUniPoly{});
    for (int i = 0; i < dA; ++i) {
      ExactUniPoly t = i < (int)A.size() ? A[i] * lcB : ExactUniPoly{};
      int j = i - (dA - dB);
      if (j >= 0 && j < dB) t = t - lcA * B[j];
      next[i] = std::move(t);
    }
    A = std::move(next);
    wtrim(A);
    --e;
  }
  if (e > 0) {
    ExactUniPoly f = pow_poly(B[dB], e);
    for (auto& a : A) a = a * f;
  }
  return A;
}

}  // namespace

ExactUniPoly resultant_w(const ExactPoly& f, const ExactPoly& g) {
  WPoly A = from_exact(f), B = from_exact(g);
  int s = 1;
  if (wdeg(A) < wdeg(B)) {
    if ((wdeg(A) & 1) && (wdeg(B) & 1)) s = -s;
    std::swap(A, B);
  }
  ExactUniPoly one;
  one.c = {GaussianRational::integer(1)};
  if (wdeg(A) < 0 || wdeg(B) < 0) return ExactUniPoly{};  // zero input
  if (wdeg(A) == 0) return one;
  if (wdeg(B) == 0) return pow_poly(B[0], wdeg(A));

  ExactUniPoly gg = one, hh = one;
  while (true) {
    int dA = wdeg(A), dB = wdeg(B);
    int delta = dA - dB;
    if ((dA & 1) && (dB & 1)) s = -s;
    WPoly R = prem(A, B);
    A = std::move(B);
    ExactUniPoly divisor = gg * pow_poly(hh, delta);
    B = std::move(R);
    wtrim(B);
    for (auto& b : B) b = divexact(b, divisor);
    if (wdeg(B) < 0) return ExactUniPoly{};  // common factor: resultant 0
    gg = A[wdeg(A)];
    if (delta >= 1)
      hh = divexact(pow_poly(gg, delta), pow_poly(hh, delta - 1));
    if (wdeg(B) == 0) {
      int dA2 = wdeg(A);
      ExactUniPoly res = divexact(pow_poly(B[0], dA2), pow_poly(hh, dA2 - 1));
      if (s < 0) res = res.scaled(GaussianRational::integer(-1));
      return res;
    }
  }
}

}  // namespace algfun
