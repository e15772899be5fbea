#include "algfun/poly.hpp"

#include <algorithm>
#include <sstream>

namespace algfun {

int ExactUniPoly::degree() const {
  for (int i = (int)c.size() - 1; i >= 0; --i)
    if (!c[i].is_zero()) return i;
  return -1;
}

void ExactUniPoly::trim() {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

const GaussianRational& ExactUniPoly::lc() const {
  static const GaussianRational zero;
  int d = degree();
  return d < 0 ? zero : c[d];
}

ExactUniPoly ExactUniPoly::derivative() const {
  ExactUniPoly r;
  if (c.size() <= 1) return r;
  r.c.resize(c.size() - 1);
  for (size_t i = 1; i < c.size(); ++i)
    r.c[i - 1] = c[i] * GaussianRational::integer((long)i);
  r.trim();
  return r;
}

GaussianRational ExactUniPoly::eval(const GaussianRational& x) const {
  GaussianRational acc;
  for (int i = (int)c.size() - 1; i >= 0; --i) acc = acc * x + c[i];
  return acc;
}

ExactUniPoly operator+(const ExactUniPoly& a, const ExactUniPoly& b) {
  ExactUniPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()));
  for (size_t i = 0; i < r.c.size(); ++i) {
    if (i < a.c.size()) r.c[i] = r.c[i] + a.c[i];
    if (i < b.c.size()) r.c[i] = r.c[i] + b.c[i];
  }
  r.trim();
  return r;
}

ExactUniPoly operator-(const ExactUniPoly& a, const ExactUniPoly& b) {
  ExactUniPoly r;
  r.c.resize(std::max(a.c.size(), b.c.size()));
  for (size_t i = 0; i < r.c.size(); ++i) {
    if (i < a.c.size()) r.c[i] = r.c[i] + a.c[i];
    if (i < b.c.size()) r.c[i] = r.c[i] - b.c[i];
  }
  r.trim();
  return r;
}

ExactUniPoly operator*(const ExactUniPoly& a, const ExactUniPoly& b) {
  ExactUniPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.c.assign(a.c.size() + b.c.size() - 1, GaussianRational());
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    for (size_t j = 0; j < b.c.size(); ++j) {
      if (b.c[j].is_zero()) continue;
      r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
    }
  }
  r.trim();
  return r;
}

ExactUniPoly ExactUniPoly::scaled(const GaussianRational& s) const {
  ExactUniPoly r = *this;
  for (auto& x : r.c) x = x * s;
  r.trim();
  return r;
}

ExactUniPoly divexact(const ExactUniPoly& a, const ExactUniPoly& b) {
  if (b.is_zero()) throw std::domain_error("divexact by zero polynomial");
  ExactUniPoly rem = a, q;
  int db = b.degree();
  int da = rem.degree();
  if (da < db) {
    if (!rem.is_zero()) throw std::domain_error("inexact polynomial division");
    return q;
  }
  q.c.assign(da - db + 1, GaussianRational());
  while (!rem.is_zero() && rem.degree() >= db) {
    int d = rem.degree();
    GaussianRational f = rem.c[d] / b.c[db];
    q.c[d - db] = f;
    for (int i = 0; i <= db; ++i)
      rem.c[d - db + i] = rem.c[d - db + i] - f * b.c[i];
    rem.trim();
  }
  if (!rem.is_zero()) throw std::domain_error("inexact polynomial division");
  q.trim();
  return q;
}

ExactUniPoly gcd_exact(ExactUniPoly a, ExactUniPoly b) {
  a.trim();
  b.trim();
  // monic remainder sequence; degrees stay small where this is used
  while (!b.is_zero()) {
    int db = b.degree();
    GaussianRational inv_lc = GaussianRational::integer(1) / b.c[db];
    for (auto& x : b.c) x = x * inv_lc;
    ExactUniPoly rem = a;
    while (!rem.is_zero() && rem.degree() >= db) {
      int d = rem.degree();
      GaussianRational f = rem.c[d];
      for (int i = 0; i <= db; ++i)
        rem.c[d - db + i] = rem.c[d - db + i] - f * b.c[i];
      rem.trim();
    }
    a = std::move(b);
    b = std::move(rem);
  }
  if (!a.is_zero()) {
    GaussianRational inv_lc = GaussianRational::integer(1) / a.lc();
    for (auto& x : a.c) x = x * inv_lc;
  }
  return a;
}

std::vector<ExactUniPoly> yun_squarefree(const ExactUniPoly& p) {
  std::vector<ExactUniPoly> out;
  ExactUniPoly d = p.derivative();
  ExactUniPoly g = gcd_exact(p, d);
  if (g.degree() <= 0) {
    out.push_back(p);
    return out;
  }
  ExactUniPoly w = divexact(p, g);
  ExactUniPoly y = divexact(d, g);
  while (true) {
    ExactUniPoly z = y - w.derivative();
    if (z.is_zero()) {
      out.push_back(w);
      break;
    }
    ExactUniPoly a = gcd_exact(w, z);
    out.push_back(a);
    w = divexact(w, a);
    y = divexact(z, a);
  }
  return out;
}

void ExactPoly::add_term(int zp, int wp, const GaussianRational& v) {
  if (v.is_zero()) return;
  auto key = std::make_pair(zp, wp);
  auto it = terms.find(key);
  if (it == terms.end()) {
    terms.emplace(key, v);
  } else {
    it->second = it->second + v;
    if (it->second.is_zero()) terms.erase(it);
  }
}

int ExactPoly::w_degree() const {
  int d = 0;
  for (auto& [k, v] : terms) d = std::max(d, k.second);
  return d;
}

int ExactPoly::z_degree() const {
  int d = 0;
  for (auto& [k, v] : terms) d = std::max(d, k.first);
  return d;
}

ExactPoly ExactPoly::derivative_w() const {
  ExactPoly r;
  for (auto& [k, v] : terms)
    if (k.second >= 1)
      r.add_term(k.first, k.second - 1, v * GaussianRational::integer(k.second));
  return r;
}

ExactPoly ExactPoly::derivative_z() const {
  ExactPoly r;
  for (auto& [k, v] : terms)
    if (k.first >= 1)
      r.add_term(k.first - 1, k.second, v * GaussianRational::integer(k.first));
  return r;
}

ExactPoly ExactPoly::infinity_transform() const {
  int delta = z_degree();
  ExactPoly r;
  for (auto& [k, v] : terms) r.add_term(delta - k.first, k.second, v);
  return r;
}

ExactUniPoly ExactPoly::w_coefficient(int j) const {
  ExactUniPoly r;
  for (auto& [k, v] : terms)
    if (k.second == j) {
      if ((int)r.c.size() <= k.first) r.c.resize(k.first + 1);
      r.c[k.first] = v;
    }
  r.trim();
  return r;
}

ExactPoly ExactPoly::translate_exact(const GaussianRational& s) const {
  int n = w_degree();
  ExactPoly out;
  for (int j = 0; j <= n; ++j) {
    ExactUniPoly col = w_coefficient(j);
    if (col.is_zero()) continue;
    // Taylor shift by synthetic division
    int d = col.degree();
    std::vector<GaussianRational> a = col.c;
    for (int i = 0; i < d; ++i)
      for (int k = d - 1; k >= i; --k) a[k] = a[k] + s * a[k + 1];
    for (int k = 0; k <= d; ++k) out.add_term(k, j, a[k]);
  }
  return out;
}

GaussianRational ExactPoly::eval(const GaussianRational& z, const GaussianRational& w) const {
  GaussianRational acc;
  for (auto& [k, v] : terms) acc = acc + v * z.pow(k.first) * w.pow(k.second);
  return acc;
}

ExactPoly operator+(const ExactPoly& a, const ExactPoly& b) {
  ExactPoly r = a;
  for (auto& [k, v] : b.terms) r.add_term(k.first, k.second, v);
  return r;
}

ExactPoly operator-(const ExactPoly& a, const ExactPoly& b) {
  ExactPoly r = a;
  for (auto& [k, v] : b.terms) r.add_term(k.first, k.second, -v);
  return r;
}

ExactPoly operator*(const ExactPoly& a, const ExactPoly& b) {
  ExactPoly r;
  for (auto& [ka, va] : a.terms)
    for (auto& [kb, vb] : b.terms)
      r.add_term(ka.first + kb.first, ka.second + kb.second, va * vb);
  return r;
}

ExactPoly ExactPoly::scaled(const GaussianRational& s) const {
  ExactPoly r;
  for (auto& [k, v] : terms) r.add_term(k.first, k.second, v * s);
  return r;
}

std::string ExactPoly::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [k, v] : terms) {
    if (!first) os << " + ";
    first = false;
    os << "(" << v.str() << ")";
    if (k.first) os << "*z^" << k.first;
    if (k.second) os << "*w^" << k.second;
  }
  return os.str();
}

void FractionalPoly::sort_terms() {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    if (a.wp != b.wp) return a.wp < b.wp;
    return a.ze < b.ze;
  });
}

int FractionalPoly::w_degree() const {
  int d = 0;
  for (auto& t : terms) d = std::max(d, t.wp);
  return d;
}

int FractionalPoly::w_valuation() const {
  if (terms.empty()) return 0;
  int v = INT32_MAX;
  for (auto& t : terms) v = std::min(v, t.wp);
  return v;
}

bool FractionalPoly::min_ze(int wp, Frac& out) const {
  bool found = false;
  for (auto& t : terms)
    if (t.wp == wp && (!found || t.ze < out)) {
      out = t.ze;
      found = true;
    }
  return found;
}

long FractionalPoly::exponent_lcm() const {
  long l = 1;
  for (auto& t : terms) l = lcm_ll(l, t.ze.den);
  return l;
}

FractionalPoly FractionalPoly::from_exact(const ExactPoly& f, long digits) {
  FractionalPoly r;
  r.digits = digits;
  for (auto& [k, v] : f.terms)
    r.terms.push_back({Frac(k.first), k.second, v.to_ball(digits)});
  r.sort_terms();
  return r;
}

FractionalPoly FractionalPoly::derivative_w() const {
  FractionalPoly r;
  r.digits = digits;
  for (auto& t : terms)
    if (t.wp >= 1) r.terms.push_back({t.ze, t.wp - 1, cb_scale_long(t.coeff, t.wp)});
  r.sort_terms();
  return r;
}

FractionalPoly FractionalPoly::substitute_w(const Frac& lambda, const ComplexBall& c) const {
  if (c.re.mid.is_zero() && c.im.mid.is_zero() && c.rad_max().is_zero()) {
    // pure rescale w -> z^lambda w
    FractionalPoly r;
    r.digits = digits;
    for (auto& t : terms)
      r.terms.push_back({t.ze + lambda * Frac(t.wp), t.wp, t.coeff});
    r.sort_terms();
    return r;
  }
  int n = w_degree();
  // binomial table; w-degrees here stay modest (<= 50)
  std::vector<std::vector<long long>> binom(n + 1);
  for (int i = 0; i <= n; ++i) {
    binom[i].assign(i + 1, 1);
    for (int j = 1; j < i; ++j) binom[i][j] = binom[i - 1][j - 1] + binom[i - 1][j];
  }
  std::vector<ComplexBall> cpow(n + 1);
  cpow[0] = ComplexBall::exact_long(1, digits);
  for (int i = 1; i <= n; ++i) cpow[i] = cb_mul(cpow[i - 1], c);

  std::map<std::pair<Frac, int>, ComplexBall> acc;
  auto cmp_key = [](const Frac& a, const Frac& b) { return a < b; };
  (void)cmp_key;
  for (auto& t : terms) {
    Frac base = t.ze + lambda * Frac(t.wp);
    for (int k = 0; k <= t.wp; ++k) {
      ComplexBall v = cb_mul(t.coeff, cpow[t.wp - k]);
      if (binom[t.wp][k] != 1) v = cb_scale_long(v, (long)binom[t.wp][k]);
      auto key = std::make_pair(base, k);
      auto it = acc.find(key);
      if (it == acc.end())
        acc.emplace(key, v);
      else
        it->second = cb_add(it->second, v);
    }
  }
  FractionalPoly r;
  r.digits = digits;
  for (auto& [k, v] : acc) r.terms.push_back({k.first, k.second, v});
  r.sort_terms();
  return r;
}

FractionalPoly FractionalPoly::shift_z(const Frac& beta) const {
  FractionalPoly r;
  r.digits = digits;
  for (auto& t : terms) r.terms.push_back({t.ze - beta, t.wp, t.coeff});
  r.sort_terms();
  return r;
}

FractionalPoly FractionalPoly::stretch_z(long d) const {
  FractionalPoly r;
  r.digits = digits;
  for (auto& t : terms) {
    Frac e = t.ze * Frac(d);
    r.terms.push_back({e, t.wp, t.coeff});
  }
  r.sort_terms();
  return r;
}

ComplexBall FractionalPoly::eval(const ComplexBall& z, const ComplexBall& w) const {
  long L = exponent_lcm();
  ComplexBall zr = L == 1 ? z : cb_root(z, L);
  ComplexBall acc = ComplexBall::exact_long(0, digits);
  for (auto& t : terms) {
    long k = t.ze.num * (L / t.ze.den);
    ComplexBall v = cb_mul(t.coeff, cb_pow_long(zr, k));
    if (t.wp) v = cb_mul(v, cb_pow_long(w, t.wp));
    acc = cb_add(acc, v);
  }
  return acc;
}

std::string FractionalPoly::str(int digits_shown) const {
  std::ostringstream os;
  bool first = true;
  for (auto& t : terms) {
    if (!first) os << " + ";
    first = false;
    os << "(" << cb_str(t.coeff, digits_shown) << ")";
    if (!t.ze.is_zero()) os << "*z^(" << t.ze.str() << ")";
    if (t.wp) os << "*w^" << t.wp;
  }
  return first ? "0" : os.str();
}

bool coeff_is_zero(const ComplexBall& c, const RunConfig& cfg) {
  if (c.is_effective_zero()) return true;
  if (cfg.residual_tolerance_set) {
    double l = c.log2_abs() * 0.30102999566398114;
    return l <= -cfg.residual_tolerance_log10;
  }
  return false;
}

StripReport strip_coefficient_zeros(FractionalPoly& f, const RunConfig& cfg) {
  StripReport rep;
  std::vector<FractionalPoly::Term> kept;
  kept.reserve(f.terms.size());
  for (auto& t : f.terms) {
    if (coeff_is_zero(t.coeff, cfg))
      rep.removed.emplace_back(t.ze, t.wp);
    else
      kept.push_back(t);
  }
  f.terms = std::move(kept);
  return rep;
}

namespace {

FractionalPoly finish_translation(FractionalPoly&& raw, const RunConfig& cfg,
                                  StripReport* report) {
  raw.sort_terms();
  StripReport rep = strip_coefficient_zeros(raw, cfg);
  if (report) *report = rep;
  // surviving coefficients must retain at least some precision
  for (auto& t : raw.terms) {
    if (effective_precision(t.coeff) < 1)
      throw Error(Fail::precision_floor,
                  "translate_z: coefficient precision exhausted at z^" +
                      t.ze.str() + " w^" + std::to_string(t.wp));
  }
  return std::move(raw);
}

}  // namespace

FractionalPoly translate_z(const ExactPoly& f, const ComplexBall& s,
                           const RunConfig& cfg, StripReport* report) {
  long digits = cfg.working_digits;
  FractionalPoly out;
  out.digits = digits;
  int n = f.w_degree();
  bool s_zero = s.re.mid.is_zero() && s.im.mid.is_zero() && s.rad_max().is_zero();
  for (int j = 0; j <= n; ++j) {
    ExactUniPoly col = f.w_coefficient(j);
    if (col.is_zero()) continue;
    int d = col.degree();
    std::vector<ComplexBall> a(d + 1);
    for (int k = 0; k <= d; ++k) a[k] = col.c[k].to_ball(digits);
    if (!s_zero) {
      for (int i = 0; i < d; ++i)
        for (int k = d - 1; k >= i; --k) cb_addmul(a[k], s, a[k + 1]);
    }
    for (int k = 0; k <= d; ++k) out.terms.push_back({Frac(k), j, a[k]});
  }
  return finish_translation(std::move(out), cfg, report);
}

FractionalPoly translate_z(const FractionalPoly& f, const ComplexBall& s,
                           const RunConfig& cfg, StripReport* report) {
  FractionalPoly out;
  out.digits = f.digits;
  int n = f.w_degree();
  for (int j = 0; j <= n; ++j) {
    long long d = -1;
    for (auto& t : f.terms)
      if (t.wp == j) {
        if (!t.ze.is_integer() || t.ze.num < 0)
          throw Error(Fail::numeric, "translate_z: non-integer z-exponent");
        d = std::max(d, t.ze.num);
      }
    if (d < 0) continue;
    std::vector<ComplexBall> a((size_t)d + 1, ComplexBall::exact_long(0, f.digits));
    for (auto& t : f.terms)
      if (t.wp == j) a[(size_t)t.ze.num] = t.coeff;
    for (long long i = 0; i < d; ++i)
      for (long long k = d - 1; k >= i; --k)
        cb_addmul(a[(size_t)k], s, a[(size_t)k + 1]);
    for (long long k = 0; k <= d; ++k) out.terms.push_back({Frac(k), j, a[(size_t)k]});
  }
  return finish_translation(std::move(out), cfg, report);
}

}  // namespace algfun
