#include "algfun/roots.hpp"

#include <algorithm>
#include <cmath>

namespace algfun {

namespace {

// Coefficients renderable at any precision: exact sources re-round from
// the rationals, ball sources are capped by their own radii.
struct CoeffSource {
  virtual ~CoeffSource() = default;
  virtual int size() const = 0;  // number of coefficients (degree+1)
  virtual BigComplex coeff(int k, mpfr_prec_t prec) const = 0;
  virtual Mag noise(int k) const = 0;
};

struct ExactSource final : CoeffSource {
  const ExactUniPoly& p;
  explicit ExactSource(const ExactUniPoly& q) : p(q) {}
  int size() const override { return p.degree() + 1; }
  BigComplex coeff(int k, mpfr_prec_t prec) const override {
    BigComplex z = BigComplex::zero(prec);
    mpfr_set_q(z.re.raw(), p.c[k].re.get_mpq_t(), MPFR_RNDN);
    mpfr_set_q(z.im.raw(), p.c[k].im.get_mpq_t(), MPFR_RNDN);
    return z;
  }
  Mag noise(int) const override { return Mag::zero(); }
};

struct BallSource final : CoeffSource {
  const std::vector<ComplexBall>& c;
  explicit BallSource(const std::vector<ComplexBall>& v) : c(v) {}
  int size() const override { return (int)c.size(); }
  BigComplex coeff(int k, mpfr_prec_t prec) const override {
    BigComplex z = BigComplex::zero(prec);
    mpfr_set(z.re.raw(), c[k].re.mid.raw(), MPFR_RNDN);
    mpfr_set(z.im.raw(), c[k].im.mid.raw(), MPFR_RNDN);
    return z;
  }
  Mag noise(int k) const override { return c[k].rad_max(); }
};

struct Rendered {
  std::vector<BigComplex> c;
  mpfr_prec_t prec;

  int degree() const { return (int)c.size() - 1; }

  BigComplex eval(const BigComplex& x) const {
    BigComplex acc = c.back();
    for (int k = (int)c.size() - 2; k >= 0; --k)
      acc = bc_add(bc_mul(acc, x), c[k]);
    return acc;
  }
  // value and first derivative together
  void eval2(const BigComplex& x, BigComplex& p, BigComplex& dp) const {
    p = c.back();
    dp = BigComplex::zero(prec);
    for (int k = (int)c.size() - 2; k >= 0; --k) {
      dp = bc_add(bc_mul(dp, x), p);
      p = bc_add(bc_mul(p, x), c[k]);
    }
  }
  // m-th derivative divided by m!
  BigComplex eval_dm(const BigComplex& x, int m) const {
    int n = degree();
    if (m > n) return BigComplex::zero(prec);
    mpz_class b;
    BigComplex acc = BigComplex::zero(prec);
    for (int k = n; k >= m; --k) {
      acc = bc_mul(acc, x);
      mpz_bin_uiui(b.get_mpz_t(), (unsigned long)k, (unsigned long)m);
      BigComplex t = c[k];
      mpfr_mul_z(t.re.raw(), t.re.raw(), b.get_mpz_t(), MPFR_RNDN);
      mpfr_mul_z(t.im.raw(), t.im.raw(), b.get_mpz_t(), MPFR_RNDN);
      acc = bc_add(acc, t);
    }
    return acc;
  }
};

Rendered render(const CoeffSource& src, mpfr_prec_t prec) {
  Rendered r;
  r.prec = prec;
  r.c.resize(src.size());
  for (int k = 0; k < src.size(); ++k) r.c[k] = src.coeff(k, prec);
  return r;
}

// rounding floor of a Horner evaluation at |x| = 2^log2x
double eval_noise_log2(const Rendered& r, double log2x) {
  double best = -HUGE_VAL;
  for (size_t k = 0; k < r.c.size(); ++k) {
    double lc = r.c[k].log2_abs();
    if (lc == -HUGE_VAL) continue;
    best = std::max(best, lc + (double)k * log2x);
  }
  if (best == -HUGE_VAL) return -HUGE_VAL;
  return best - (double)r.prec + std::log2((double)r.c.size() + 1);
}

// log2 bound on the evaluation uncertainty coming from coefficient radii
double noise_log2(const CoeffSource& src, double log2x) {
  double best = -HUGE_VAL;
  int n = src.size();
  for (int k = 0; k < n; ++k) {
    Mag g = src.noise(k);
    if (g.is_zero()) continue;
    best = std::max(best, g.log2() + k * log2x);
  }
  if (best == -HUGE_VAL) return -HUGE_VAL;
  return best + std::log2((double)n + 1);
}

// starting guesses from the upper hull of (k, log2|c_k|)
std::vector<BigComplex> initial_guesses(const Rendered& r) {
  int n = r.degree();
  std::vector<double> l(n + 1, -HUGE_VAL);
  for (int k = 0; k <= n; ++k)
    if (!r.c[k].is_zero()) l[k] = r.c[k].log2_abs();
  std::vector<int> hull;
  for (int k = 0; k <= n; ++k) {
    if (l[k] == -HUGE_VAL) continue;
    while (hull.size() >= 2) {
      int a = hull[hull.size() - 2], b = hull[hull.size() - 1];
      if ((l[b] - l[a]) * (k - a) <= (l[k] - l[a]) * (b - a))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(k);
  }
  std::vector<BigComplex> guesses;
  guesses.reserve(n);
  for (size_t e = 0; e + 1 < hull.size(); ++e) {
    int k1 = hull[e], k2 = hull[e + 1];
    double rad = std::exp2((l[k1] - l[k2]) / (k2 - k1));
    if (!std::isfinite(rad) || rad == 0.0) rad = 1.0;
    int cnt = k2 - k1;
    for (int i = 0; i < cnt; ++i) {
      double th = 2.0 * M_PI * (i + 0.35) / cnt + 0.4 * (double)e + 0.77;
      guesses.push_back(BigComplex::from_doubles(rad * std::cos(th),
                                                 rad * std::sin(th), r.prec));
    }
  }
  while ((int)guesses.size() < n)
    guesses.push_back(BigComplex::from_doubles(1.0, 0.5, r.prec));
  return guesses;
}

void aberth_rung(const Rendered& r, std::vector<BigComplex>& x, int max_sweeps) {
  int n = (int)x.size();
  mpfr_prec_t prec = r.prec;
  double stop = -(double)prec + 12;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double worst = -HUGE_VAL;
    for (int i = 0; i < n; ++i) {
      BigComplex p, dp;
      r.eval2(x[i], p, dp);
      if (p.is_zero()) continue;
      if (dp.is_zero())
        dp = BigComplex::from_doubles(1e-30, 1e-30, prec);
      BigComplex w = bc_div(p, dp);
      BigComplex s = BigComplex::zero(prec);
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        BigComplex d = bc_sub(x[i], x[j]);
        if (d.is_zero())
          d = BigComplex::from_doubles(std::ldexp(1.0, -(int)prec / 2),
                                       std::ldexp(1.0, -(int)prec / 2), prec);
        s = bc_add(s, bc_div({BigFloat::from_long(1, prec), BigFloat(prec)}, d));
      }
      BigComplex denom = bc_sub({BigFloat::from_long(1, prec), BigFloat(prec)},
                                bc_mul(w, s));
      BigComplex corr = denom.is_zero() ? w : bc_div(w, denom);
      x[i] = bc_sub(x[i], corr);
      double rel = corr.log2_abs() -
                   std::max(x[i].log2_abs(), -(double)prec);
      worst = std::max(worst, rel);
    }
    if (worst < stop) break;
  }
}

struct Approx {
  BigComplex x;
  double rad_log2 = HUGE_VAL;  // inclusion radius
};

// n * (|p(x)| + noise) / |p'(x)|, as a log2 radius
double inclusion_log2(const Rendered& r, const CoeffSource& src,
                      const BigComplex& x) {
  BigComplex p, dp;
  r.eval2(x, p, dp);
  double lp = p.log2_abs();
  double ln = std::max(noise_log2(src, x.log2_abs()),
                       eval_noise_log2(r, x.log2_abs()));
  double num = std::max(lp, ln);
  if (num == -HUGE_VAL) return -HUGE_VAL;
  double ld = dp.log2_abs();
  if (ld == -HUGE_VAL) return HUGE_VAL;
  return num - ld + std::log2((double)r.degree() + 1.0);
}

struct DisjointSet {
  std::vector<int> p;
  explicit DisjointSet(int n) : p(n) {
    for (int i = 0; i < n; ++i) p[i] = i;
  }
  int find(int i) { return p[i] == i ? i : p[i] = find(p[i]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

// multiplicity-aware polish: x -= m * p / p'
void refine_cluster(const CoeffSource& src, BigComplex& x, int m, long digits,
                    double& rad_log2) {
  long need_digits = digits * m + 20;
  mpfr_prec_t prec = bits_for_digits(need_digits);
  Rendered r = render(src, prec);
  BigComplex xx = BigComplex::zero(prec);
  mpfr_set(xx.re.raw(), x.re.raw(), MPFR_RNDN);
  mpfr_set(xx.im.raw(), x.im.raw(), MPFR_RNDN);
  double lx = std::max(xx.log2_abs(), 0.0);
  double lnoise = std::max(noise_log2(src, xx.log2_abs()),
                           eval_noise_log2(r, xx.log2_abs()));
  double last_step = HUGE_VAL;
  bool converged = false;
  for (int it = 0; it < 200; ++it) {
    BigComplex p, dp;
    r.eval2(xx, p, dp);
    double lp = p.log2_abs();
    if (lp == -HUGE_VAL || lp <= lnoise + 2) {
      converged = true;  // residual at the evaluation floor
      break;
    }
    if (dp.is_zero()) break;
    BigComplex step = bc_scale_double(bc_div(p, dp), (double)m);
    xx = bc_sub(xx, step);
    last_step = step.log2_abs();
    if (last_step < lx - (double)prec + 8) {
      converged = true;
      break;
    }
  }
  // residual-based radius: (|p| + noise over |p^(m)/m!|)^(1/m)
  BigComplex pm = r.eval_dm(xx, m);
  BigComplex p0 = r.eval(xx);
  double num = std::max(p0.log2_abs(), lnoise);
  double lpm = pm.log2_abs();
  double rad;
  if (lpm == -HUGE_VAL || num == -HUGE_VAL)
    rad = num == -HUGE_VAL ? -HUGE_VAL : num;
  else
    rad = (num - lpm + std::log2((double)r.degree() + 1.0)) / m;
  // a stalled iteration cannot claim better than its last movement
  if (!converged && last_step != HUGE_VAL) rad = std::max(rad, last_step + 2);
  rad_log2 = rad;
  x = xx;
}

ComplexBall package(const BigComplex& x, double rad_log2, long digits) {
  mpfr_prec_t prec = bits_for_digits(digits);
  ComplexBall b;
  b.re.mid = BigFloat(prec);
  b.im.mid = BigFloat(prec);
  mpfr_set(b.re.mid.raw(), x.re.raw(), MPFR_RNDN);
  mpfr_set(b.im.mid.raw(), x.im.raw(), MPFR_RNDN);
  Mag rad = rad_log2 == -HUGE_VAL ? Mag::zero()
                                  : Mag::from_2exp((long long)std::ceil(rad_log2));
  b.re.rad = rad + Mag::ulp(b.re.mid);
  b.im.rad = b.re.rad;
  return b;
}

std::vector<RootBall> solve(const CoeffSource& src, long digits,
                            const RunConfig& cfg, bool expect_simple) {
  (void)cfg;
  int n = src.size() - 1;
  std::vector<RootBall> out;
  if (n <= 0) return out;

  mpfr_prec_t target = bits_for_digits(digits) + 64;
  mpfr_prec_t prec = 96;
  Rendered r = render(src, prec);
  std::vector<BigComplex> x = initial_guesses(r);
  aberth_rung(r, x, 80);
  while (prec < target) {
    prec = std::min<mpfr_prec_t>(prec * 2, target);
    r = render(src, prec);
    for (auto& xi : x) {
      BigComplex up = BigComplex::zero(prec);
      mpfr_set(up.re.raw(), xi.re.raw(), MPFR_RNDN);
      mpfr_set(up.im.raw(), xi.im.raw(), MPFR_RNDN);
      xi = up;
    }
    aberth_rung(r, x, expect_simple ? 20 : 40);
  }

  std::vector<double> rad(n);
  for (int i = 0; i < n; ++i) rad[i] = inclusion_log2(r, src, x[i]);

  // group approximations whose difference is effectively zero; the
  // inclusion radius understates the containment disk at multiple roots,
  // hence the slack factor
  DisjointSet ds(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double d = bc_sub(x[i], x[j]).log2_abs();
      double rr = std::max(rad[i], rad[j]) + 3.0;
      if (d == -HUGE_VAL || d <= rr) ds.unite(i, j);
    }

  std::vector<std::vector<int>> clusters(n);
  for (int i = 0; i < n; ++i) clusters[ds.find(i)].push_back(i);

  bool exact_source = true;
  for (int k = 0; k <= n && exact_source; ++k)
    if (!src.noise(k).is_zero()) exact_source = false;

  for (int c = 0; c < n; ++c) {
    if (clusters[c].empty()) continue;
    int m = (int)clusters[c].size();
    BigComplex mean = BigComplex::zero(prec);
    for (int i : clusters[c]) mean = bc_add(mean, x[i]);
    mean = bc_scale_double(mean, 1.0 / m);
    double rl;
    if (m == 1) {
      mean = x[clusters[c][0]];
      rl = rad[clusters[c][0]];
    } else if (exact_source) {
      // an exact multiple root supports full multiplicity-aware refinement
      refine_cluster(src, mean, m, digits, rl);
    } else {
      // noisy coefficients split an m-fold root into a cluster of width
      // ~noise^(1/m); polish the centroid on the (m-1)-th derivative,
      // whose root there is simple, and keep the spread as the radius
      for (int it = 0; it < 6; ++it) {
        BigComplex qm1 = r.eval_dm(mean, m - 1);
        BigComplex qm = r.eval_dm(mean, m);
        if (qm.is_zero()) break;
        BigComplex step = bc_scale_double(bc_div(qm1, qm), 1.0 / m);
        mean = bc_sub(mean, step);
        if (step.log2_abs() < mean.log2_abs() - (double)prec) break;
      }
      double spread = -HUGE_VAL;
      for (int i : clusters[c])
        spread = std::max(spread, bc_sub(x[i], mean).log2_abs());
      double lnoise = noise_log2(src, mean.log2_abs());
      double lpm = r.eval_dm(mean, m).log2_abs();
      // noise alone moves an m-fold root by (noise / |p^(m)/m!|)^(1/m)
      double split = lpm == -HUGE_VAL
                         ? lnoise
                         : (lnoise - lpm + std::log2((double)n + 1.0)) / m;
      rl = std::max({spread + 1.0, split, lnoise + std::log2((double)n + 1.0)});
    }
    RootBall rb;
    rb.value = package(mean, rl, digits);
    rb.multiplicity = m;
    out.push_back(rb);
  }

  std::sort(out.begin(), out.end(), [](const RootBall& a, const RootBall& b) {
    int c = bf::cmp(a.value.re.mid, b.value.re.mid);
    if (c != 0) return c < 0;
    return bf::cmp(a.value.im.mid, b.value.im.mid) < 0;
  });
  return out;
}

}  // namespace

std::vector<RootBall> roots_of_balls(const std::vector<ComplexBall>& coeffs,
                                     long digits, const RunConfig& cfg) {
  // strip effective-zero leading and trailing coefficients
  std::vector<ComplexBall> c = coeffs;
  while (!c.empty() && c.back().is_effective_zero()) c.pop_back();
  if (c.empty())
    throw Error(Fail::numeric, "roots: polynomial is effectively zero");
  int val = 0;
  while (val < (int)c.size() - 1 && c[val].is_effective_zero()) ++val;
  std::vector<RootBall> out;
  if (val > 0) {
    c.erase(c.begin(), c.begin() + val);
    RootBall zero;
    zero.value = ComplexBall::exact_long(0, digits);
    zero.value.re.rad = Mag::from_pow10((double)-digits);
    zero.value.im.rad = zero.value.re.rad;
    zero.multiplicity = val;
    out.push_back(zero);
  }
  if (c.size() > 1) {
    BallSource src(c);
    auto rest = solve(src, digits, cfg, false);
    out.insert(out.end(), rest.begin(), rest.end());
  }
  std::sort(out.begin(), out.end(), [](const RootBall& a, const RootBall& b) {
    int k = bf::cmp(a.value.re.mid, b.value.re.mid);
    if (k != 0) return k < 0;
    return bf::cmp(a.value.im.mid, b.value.im.mid) < 0;
  });
  return out;
}

std::vector<RootBall> roots_of_exact(const ExactUniPoly& p, long digits,
                                     const RunConfig& cfg) {
  ExactUniPoly q = p;
  q.trim();
  int deg = q.degree();
  if (deg < 1) throw Error(Fail::numeric, "roots: degree < 1");
  std::vector<RootBall> out;
  // exact zero roots come off first
  int val = 0;
  while (val < (int)q.c.size() && q.c[val].is_zero()) ++val;
  if (val > 0) {
    q.c.erase(q.c.begin(), q.c.begin() + val);
    RootBall zero;
    zero.value = ComplexBall::exact_long(0, digits);
    zero.multiplicity = val;
    out.push_back(zero);
  }
  if (q.degree() >= 1) {
    if (q.degree() <= 64) {
      // exact squarefree split: factor k holds multiplicity-(k+1) roots
      auto factors = yun_squarefree(q);
      for (size_t k = 0; k < factors.size(); ++k) {
        if (factors[k].degree() < 1) continue;
        ExactSource src(factors[k]);
        auto part = solve(src, digits, cfg, true);
        for (auto& rb : part) {
          rb.multiplicity = (int)k + 1;
          out.push_back(rb);
        }
      }
    } else {
      ExactSource src(q);
      auto part = solve(src, digits, cfg, false);
      out.insert(out.end(), part.begin(), part.end());
    }
  }
  int total = 0;
  for (auto& rb : out) total += rb.multiplicity;
  if (total != deg)
    throw Error(Fail::numeric, "roots: multiplicity checksum failed");
  std::sort(out.begin(), out.end(), [](const RootBall& a, const RootBall& b) {
    int k = bf::cmp(a.value.re.mid, b.value.re.mid);
    if (k != 0) return k < 0;
    return bf::cmp(a.value.im.mid, b.value.im.mid) < 0;
  });
  return out;
}

}  // namespace algfun
