#include "algfun/puiseux.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace algfun {

namespace {

ComplexBall zero_ball(long digits) { return ComplexBall::exact_long(0, digits); }

// f_w terms with z-exponent zero evaluated at w
ComplexBall eval_at_center(const FractionalPoly& f, const ComplexBall& w) {
  ComplexBall acc = zero_ball(f.digits);
  for (auto& t : f.terms) {
    if (!t.ze.is_zero()) continue;
    acc = cb_add(acc, cb_mul(t.coeff, cb_pow_long(w, t.wp)));
  }
  return acc;
}

long min_precision(const FractionalPoly& f) {
  long best = LONG_MAX;
  for (auto& t : f.terms) best = std::min(best, effective_precision(t.coeff));
  return best;
}

}  // namespace

std::string BranchType::str() const {
  switch (kind) {
    case BranchKind::T:
      return "T";
    case BranchKind::E:
      return "E";
    case BranchKind::F:
      return "F" + std::to_string(p) + "^" + std::to_string(q);
    case BranchKind::V:
      return "V" + std::to_string(p) + "^" + std::to_string(q);
    case BranchKind::P:
      return "P" + std::to_string(p) + "^" + std::to_string(q);
    case BranchKind::L:
      return "L^" + std::to_string(q);
  }
  return "?";
}

int ExpansionSet::class_of_series(int series_idx0) const {
  for (size_t k = 0; k < classes.size(); ++k)
    for (int m : classes[k].members)
      if (m == series_idx0) return (int)k;
  return -1;
}

NewtonPolygon newton_polygon(const FractionalPoly& f, bool ascending_only,
                             const RunConfig& cfg) {
  (void)cfg;
  if (f.empty())
    throw Error(Fail::numeric, "newton polygon: empty support");
  // column minima
  std::map<int, Frac> col;
  for (auto& t : f.terms) {
    auto it = col.find(t.wp);
    if (it == col.end() || t.ze < it->second) col[t.wp] = t.ze;
  }
  std::vector<std::pair<int, Frac>> pts(col.begin(), col.end());
  // lower convex hull, left to right
  std::vector<std::pair<int, Frac>> hull;
  for (auto& p : pts) {
    while (hull.size() >= 2) {
      auto& a = hull[hull.size() - 2];
      auto& b = hull[hull.size() - 1];
      // b above or on segment a->p: pop
      Frac cross = (b.second - a.second) * Frac(p.first - a.first) -
                   (p.second - a.second) * Frac(b.first - a.first);
      if (cross >= Frac(0))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(p);
  }

  NewtonPolygon out;
  for (size_t e = 0; e + 1 < hull.size(); ++e) {
    auto& [j1, i1] = hull[e];
    auto& [j2, i2] = hull[e + 1];
    PolygonSegment seg;
    seg.lambda = (i1 - i2) / Frac(j2 - j1);
    if (ascending_only && !(seg.lambda > Frac(0))) continue;
    seg.beta = i1 + seg.lambda * Frac(j1);
    seg.j_lo = j1;
    seg.j_hi = j2;
    seg.characteristic.assign(j2 - j1 + 1, zero_ball(f.digits));
    for (auto& t : f.terms) {
      if (t.wp < j1 || t.wp > j2) continue;
      if (t.ze + seg.lambda * Frac(t.wp) == seg.beta)
        seg.characteristic[t.wp - j1] = t.coeff;
    }
    out.segments.push_back(std::move(seg));
  }
  return out;
}

std::vector<RootBall> characteristic_roots(const PolygonSegment& seg,
                                           const RunConfig& cfg) {
  return roots_of_balls(seg.characteristic, cfg.working_digits, cfg);
}

FractionalPoly polygon_iterate(const FractionalPoly& f, const PolygonSegment& seg,
                               const ComplexBall& c, const RunConfig& cfg,
                               StripReport* report) {
  FractionalPoly cur = f;
  StripReport rep = strip_coefficient_zeros(cur, cfg);  // residues from earlier steps
  FractionalPoly next = cur.substitute_w(seg.lambda, c).shift_z(seg.beta);
  StripReport rep2 = strip_coefficient_zeros(next, cfg);
  rep.removed.insert(rep.removed.end(), rep2.removed.begin(), rep2.removed.end());
  if (report) *report = rep;
  if (next.empty())
    throw Error(Fail::precision_floor, "polygon iterate vanished entirely");
  long floor_d = cfg.floor_digits();
  if (min_precision(next) < floor_d)
    throw Error(Fail::precision_floor,
                "polygon iterate dropped below the precision floor (" +
                    std::to_string(min_precision(next)) + " < " +
                    std::to_string(floor_d) + " digits)");
  return next;
}

namespace {

struct TreeState {
  const RunConfig& cfg;
  std::vector<ExpansionLeaf> leaves;
};

void expand_tree(FractionalPoly f, std::vector<ChainStep> prefix, Frac lambda_acc,
                 long long cyc, int level, int expected, TreeState& st) {
  if (level > 48)
    throw Error(Fail::numeric, "polygon iteration depth exceeded");
  strip_coefficient_zeros(f, st.cfg);
  if (f.empty())
    throw Error(Fail::precision_floor, "iterate stripped to nothing");
  size_t before = st.leaves.size();

  int val = f.w_valuation();
  if (val > 0) {
    if (level == 1)
      throw Error(Fail::parse,
                  "constant-in-w coefficient vanishes identically: w divides f");
    // the fixed prefix solves f exactly: the series ends here
    for (int k = 0; k < val; ++k) {
      ExpansionLeaf leaf;
      leaf.prefix = prefix;
      leaf.last = f;
      leaf.terminated = true;
      leaf.lambda_base = lambda_acc;
      leaf.cycle = cyc;
      st.leaves.push_back(std::move(leaf));
    }
  }

  if (f.w_degree() > val) {
    NewtonPolygon poly = newton_polygon(f, level > 1, st.cfg);
    for (auto& seg : poly.segments) {
      auto chars = characteristic_roots(seg, st.cfg);
      for (auto& cr : chars) {
        Frac lam_total = lambda_acc + seg.lambda;
        long long cyc2 = lcm_ll(cyc, lam_total.den);
        if (cr.multiplicity == 1) {
          ExpansionLeaf leaf;
          leaf.prefix = prefix;
          leaf.last = f;
          leaf.lambda = seg.lambda;
          leaf.beta = seg.beta;
          leaf.w0 = cr.value;
          leaf.lambda_base = lambda_acc;
          leaf.cycle = cyc2;
          st.leaves.push_back(std::move(leaf));
        } else {
          FractionalPoly fnext = polygon_iterate(f, seg, cr.value, st.cfg);
          std::vector<ChainStep> pre2 = prefix;
          pre2.push_back({lam_total, cr.value});
          expand_tree(std::move(fnext), std::move(pre2), lam_total, cyc2,
                      level + 1, cr.multiplicity, st);
        }
      }
    }
  }

  int produced = (int)(st.leaves.size() - before);
  if (produced != expected)
    throw Error(Fail::checksum,
                "cycle check-sum failed at polygon level " +
                    std::to_string(level) + ": expected " +
                    std::to_string(expected) + " branches, produced " +
                    std::to_string(produced));
}

}  // namespace

std::vector<ExpansionLeaf> initial_segments(const FractionalPoly& local,
                                            const RunConfig& cfg) {
  TreeState st{cfg, {}};
  int n = local.w_degree();
  expand_tree(local, {}, Frac(0), 1, 1, n, st);
  return std::move(st.leaves);
}

IterationLadder normalize_for_iteration(const ExpansionLeaf& leaf,
                                        const RunConfig& cfg) {
  (void)cfg;
  IterationLadder out;
  FractionalPoly fh =
      leaf.last.substitute_w(leaf.lambda, zero_ball(leaf.last.digits));
  fh = fh.shift_z(leaf.beta);
  out.fhat = fh;
  out.d = fh.exponent_lcm();
  FractionalPoly fb = fh.stretch_z(out.d);
  int n = fb.w_degree();
  out.fbar.assign(n + 1, {});
  for (auto& t : fb.terms) {
    if (!t.ze.is_integer() || t.ze.num < 0)
      throw Error(Fail::numeric, "normalization left a fractional exponent");
    auto& row = out.fbar[t.wp];
    if ((long long)row.size() <= t.ze.num)
      row.resize(t.ze.num + 1, zero_ball(fb.digits));
    row[t.ze.num] = t.coeff;
  }
  return out;
}

namespace {

// Midpoint series arithmetic for the Kung-Traub iteration. Interval radii
// compound through the long-division recurrence orders of magnitude faster
// than the actual rounding error (measured: ~0.5 digits/term claimed vs a
// flat true error), so the iteration runs on midpoints and the radii are
// recovered afterwards from a perturbed lower-precision rerun.
using MSeries = std::vector<BigComplex>;

MSeries ms_mul_trunc(const MSeries& a, const MSeries& b, size_t len,
                     mpfr_prec_t prec) {
  if (a.empty() || b.empty()) return {};
  size_t out_len = std::min(len, a.size() + b.size() - 1);
  MSeries r(out_len, BigComplex::zero(prec));
  for (size_t i = 0; i < a.size() && i < out_len; ++i) {
    if (a[i].is_zero()) continue;
    size_t jmax = std::min(b.size(), out_len - i);
    for (size_t j = 0; j < jmax; ++j)
      r[i + j] = bc_add(r[i + j], bc_mul(a[i], b[j]));
  }
  return r;
}

MSeries ms_div_trunc(const MSeries& a, const MSeries& b, size_t len,
                     mpfr_prec_t prec) {
  MSeries q(len, BigComplex::zero(prec));
  MSeries rem = a;
  rem.resize(len, BigComplex::zero(prec));
  for (size_t k = 0; k < len; ++k) {
    BigComplex c = bc_div(rem[k], b[0]);
    q[k] = c;
    size_t jmax = std::min(b.size(), len - k);
    for (size_t j = 1; j < jmax; ++j)
      rem[k + j] = bc_sub(rem[k + j], bc_mul(c, b[j]));
  }
  return q;
}

MSeries ms_eval_poly(const std::vector<MSeries>& rows, const MSeries& w,
                     size_t len, mpfr_prec_t prec) {
  size_t n = rows.size();
  size_t full = 1;
  for (auto& r : rows) full = std::max(full, r.size());
  full += (n - 1) * w.size() + 1;
  size_t cap = len == 0 ? full : len;
  MSeries acc = rows.back();
  if (acc.size() > cap) acc.resize(cap);
  for (int j = (int)n - 2; j >= 0; --j) {
    acc = ms_mul_trunc(acc, w, cap, prec);
    if (acc.empty()) acc.assign(1, BigComplex::zero(prec));
    for (size_t k = 0; k < rows[j].size() && k < cap; ++k) {
      if (acc.size() <= k) acc.resize(k + 1, BigComplex::zero(prec));
      acc[k] = bc_add(acc[k], rows[j][k]);
    }
  }
  return acc;
}

long ms_first_above(const MSeries& a, double zero_log2) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].log2_abs() > zero_log2) return (long)i;
  return -1;
}

struct MidRun {
  MSeries coeff;
  bool finite = false;
};

MidRun iterate_midpoints(const std::vector<MSeries>& fbar, const BigComplex& w0,
                         long target_terms, mpfr_prec_t prec, double zero_log2,
                         int n_zm) {
  size_t n = fbar.size();
  std::vector<MSeries> fw(n - 1);
  for (size_t j = 0; j + 1 < n; ++j) {
    fw[j] = fbar[j + 1];
    for (auto& c : fw[j]) {
      mpfr_mul_si(c.re.raw(), c.re.raw(), (long)j + 1, MPFR_RNDN);
      mpfr_mul_si(c.im.raw(), c.im.raw(), (long)j + 1, MPFR_RNDN);
    }
  }
  MidRun out;
  MSeries w{w0};
  size_t T = 2;
  int zero_streak = 0;
  for (int iter = 0; iter < 200; ++iter) {
    MSeries p = ms_eval_poly(fbar, w, T, prec);
    if (ms_first_above(p, zero_log2) < 0) {
      MSeries pf = ms_eval_poly(fbar, w, 0, prec);
      long v = ms_first_above(pf, zero_log2);
      if (v < 0) {
        out.finite = true;
        break;
      }
      int cnt = 0;
      while ((long)T <= v) {
        T <<= 1;
        ++cnt;
      }
      if (zero_streak + cnt >= n_zm) {
        // a gap this long is taken for an exact polynomial
        out.finite = true;
        break;
      }
      zero_streak += cnt;
      continue;
    }
    zero_streak = 0;
    MSeries q = ms_eval_poly(fw, w, T, prec);
    if (q.empty() || q[0].log2_abs() <= zero_log2)
      throw Error(Fail::numeric,
                  "newton iteration: derivative is an effective zero");
    MSeries incr = ms_div_trunc(p, q, T, prec);
    if (w.size() < T) w.resize(T, BigComplex::zero(prec));
    for (size_t k = 0; k < T && k < incr.size(); ++k)
      w[k] = bc_sub(w[k], incr[k]);

    long nz = 0;
    for (auto& c : w)
      if (c.log2_abs() > zero_log2) ++nz;
    if (nz >= target_terms) break;
    if (T >= ((size_t)1 << 22)) break;
    T <<= 1;
  }
  out.coeff = std::move(w);
  return out;
}

BigComplex midpoint_at(const ComplexBall& b, mpfr_prec_t prec) {
  BigComplex m = BigComplex::zero(prec);
  mpfr_set(m.re.raw(), b.re.mid.raw(), MPFR_RNDN);
  mpfr_set(m.im.raw(), b.im.mid.raw(), MPFR_RNDN);
  return m;
}

// midpoint shifted within its own radius, for the condition probe
BigComplex perturbed(const ComplexBall& b, mpfr_prec_t prec, double fx, double fy) {
  BigComplex m = midpoint_at(b, prec);
  Mag r = b.rad_max();
  if (!r.is_zero() && !r.is_inf()) {
    BigComplex d = BigComplex::from_doubles(fx, fy, prec);
    long e = (long)std::floor(r.log2());
    mpfr_mul_2si(d.re.raw(), d.re.raw(), e, MPFR_RNDN);
    mpfr_mul_2si(d.im.raw(), d.im.raw(), e, MPFR_RNDN);
    m = bc_add(m, d);
  }
  return m;
}

}  // namespace

NewtonSeriesResult newton_iterate_series(const IterationLadder& ladder,
                                         const ComplexBall& w0, long target_terms,
                                         const RunConfig& cfg) {
  long digits = cfg.working_digits;
  size_t n = ladder.fbar.size();
  if (n < 2) throw Error(Fail::numeric, "iteration polynomial has w-degree 0");

  // zero threshold for modular increments: r_t when configured, otherwise
  // scaled to the working precision
  double zero_digits = cfg.residual_tolerance_set
                           ? cfg.residual_tolerance_log10
                           : (double)digits * 0.75;
  double fscale = 0;
  Mag input_rad = Mag::zero();
  for (auto& row : ladder.fbar)
    for (auto& c : row) {
      fscale = std::max(fscale, c.log2_abs());
      input_rad = Mag::max(input_rad, c.rad_max());
    }
  input_rad = Mag::max(input_rad, w0.rad_max());
  double zero_log2 = fscale - zero_digits * 3.3219280948873623;

  mpfr_prec_t prec1 = bits_for_digits(digits);
  mpfr_prec_t prec2 = bits_for_digits(digits / 2 + 12);

  std::vector<MSeries> rows1(n), rows2(n);
  for (size_t j = 0; j < n; ++j) {
    rows1[j].reserve(ladder.fbar[j].size());
    rows2[j].reserve(ladder.fbar[j].size());
    int k = 0;
    for (auto& c : ladder.fbar[j]) {
      rows1[j].push_back(midpoint_at(c, prec1));
      rows2[j].push_back(perturbed(c, prec2, 0.6 + 0.1 * (k % 3), -0.7));
      ++k;
    }
  }
  BigComplex w0a = midpoint_at(w0, prec1);
  BigComplex w0b = perturbed(w0, prec2, -0.8, 0.55);

  MidRun run1 = iterate_midpoints(rows1, w0a, target_terms, prec1, zero_log2,
                                  cfg.n_zm);
  MidRun run2 = iterate_midpoints(rows2, w0b, target_terms, prec2, zero_log2,
                                  cfg.n_zm);

  NewtonSeriesResult out;
  out.finite = run1.finite;
  size_t len = run1.coeff.size();
  out.coeff = ser::zero(len, digits);
  long floor_d = cfg.floor_digits();
  long worst = LONG_MAX;
  for (size_t k = 0; k < len; ++k) {
    ComplexBall b;
    b.re.mid = BigFloat(prec1);
    b.im.mid = BigFloat(prec1);
    mpfr_set(b.re.mid.raw(), run1.coeff[k].re.raw(), MPFR_RNDN);
    mpfr_set(b.im.mid.raw(), run1.coeff[k].im.raw(), MPFR_RNDN);
    Mag rad = input_rad + Mag::ulp(b.re.mid) + Mag::ulp(b.im.mid);
    if (k < run2.coeff.size()) {
      BigComplex diff = bc_sub(run1.coeff[k], run2.coeff[k]);
      double dl = diff.log2_abs();
      if (dl != -HUGE_VAL) rad = rad + Mag::from_2exp((long long)std::ceil(dl + 3));
    }
    b.re.rad = rad;
    b.im.rad = rad;
    out.coeff[k] = b;
    if (b.re.mid.log2_abs() > zero_log2)
      worst = std::min(worst, effective_precision(b));
  }
  if (worst != LONG_MAX && worst < floor_d)
    throw Error(Fail::precision_floor,
                "series terms dropped below the precision floor (" +
                    std::to_string(worst) + " < " + std::to_string(floor_d) +
                    " digits)");
  return out;
}

PuiseuxSeries back_substitute(const ExpansionLeaf& leaf, const IterationLadder& ladder,
                              const NewtonSeriesResult& tail, const RunConfig& cfg) {
  (void)cfg;
  PuiseuxSeries out;
  out.cycle = leaf.cycle;
  out.finite = tail.finite || leaf.terminated;

  std::vector<std::pair<Frac, ComplexBall>> items;
  for (auto& step : leaf.prefix) items.emplace_back(step.lambda_sum, step.root);
  if (!leaf.terminated) {
    Frac tail0 = leaf.lambda_base + leaf.lambda;
    for (size_t l = 0; l < tail.coeff.size(); ++l) {
      if (tail.coeff[l].is_effective_zero()) continue;
      items.emplace_back(tail0 + Frac((long long)l, ladder.d), tail.coeff[l]);
    }
  }
  std::sort(items.begin(), items.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  for (auto& [e, c] : items) {
    Frac scaled = e * Frac(out.cycle);
    if (!scaled.is_integer())
      throw Error(Fail::checksum, "exponent " + e.str() +
                                      " incompatible with cycle size " +
                                      std::to_string(out.cycle));
    out.expnum.push_back(scaled.num);
    out.coeff.push_back(c);
  }
  // minimality: gcd of the numerators with the cycle is 1 by construction;
  // reduce anyway if a degenerate window says otherwise
  long long g = out.cycle;
  for (auto m : out.expnum) g = std::gcd(g, m < 0 ? -m : m);
  if (g > 1) {
    out.cycle /= g;
    for (auto& m : out.expnum) m /= g;
  }
  return out;
}

PuiseuxSeries expand_leaf(const ExpansionLeaf& leaf, long target_terms,
                          const RunConfig& cfg) {
  if (leaf.terminated) {
    NewtonSeriesResult empty;
    empty.finite = true;
    IterationLadder lad;
    return back_substitute(leaf, lad, empty, cfg);
  }
  IterationLadder lad = normalize_for_iteration(leaf, cfg);
  long inner_target = std::max<long>(1, target_terms - (long)leaf.prefix.size());
  NewtonSeriesResult tail = newton_iterate_series(lad, leaf.w0, inner_target, cfg);
  return back_substitute(leaf, lad, tail, cfg);
}

PuiseuxSeries conjugate_series(const PuiseuxSeries& p, long long j, long digits) {
  PuiseuxSeries out = p;
  if (p.cycle == 1 || j % p.cycle == 0) return out;
  std::vector<ComplexBall> phase((size_t)p.cycle);
  for (long long r = 0; r < p.cycle; ++r)
    phase[(size_t)r] = cb_unit_phase((long)((j % p.cycle) * r % p.cycle),
                                     (long)p.cycle, digits);
  for (size_t t = 0; t < p.terms(); ++t) {
    long long r = ((p.expnum[t] % p.cycle) + p.cycle) % p.cycle;
    out.coeff[t] = cb_mul(p.coeff[t], phase[(size_t)r]);
  }
  return out;
}

namespace {

struct Fingerprint {
  std::vector<Frac> exps;
  std::vector<ComplexBall> coeffs;
  long long cycle = 1;
  bool finite = false;
};

Fingerprint to_fingerprint(const PuiseuxSeries& s) {
  Fingerprint fp;
  fp.cycle = s.cycle;
  fp.finite = s.finite;
  for (size_t t = 0; t < s.terms(); ++t) {
    fp.exps.push_back(s.exponent(t));
    fp.coeffs.push_back(s.coeff[t]);
  }
  return fp;
}

bool coeff_match(const ComplexBall& a, const ComplexBall& b, long digits) {
  ComplexBall d = cb_sub(a, b);
  double lim = d.rad_max().log10();
  double tiny = -0.7 * (double)digits;
  double cut = std::max(lim + 1.0, tiny);  // 10x summed radii, in logs
  double val = d.log2_abs() * 0.30102999566398114;
  return val == -HUGE_VAL || val <= cut;
}

bool fingerprint_match(const Fingerprint& a, const Fingerprint& b, long digits) {
  if (a.cycle != b.cycle || a.finite != b.finite) return false;
  if (a.exps.size() != b.exps.size()) return false;
  for (size_t i = 0; i < a.exps.size(); ++i)
    if (a.exps[i] != b.exps[i]) return false;
  for (size_t i = 0; i < a.coeffs.size(); ++i)
    if (!coeff_match(a.coeffs[i], b.coeffs[i], digits)) return false;
  return true;
}

Fingerprint conjugate_fp(const Fingerprint& fp, long long j, long digits) {
  Fingerprint out = fp;
  for (size_t t = 0; t < fp.exps.size(); ++t) {
    long long m = fp.exps[t].num * (fp.cycle / fp.exps[t].den);
    long long r = ((j * m) % fp.cycle + fp.cycle) % fp.cycle;
    out.coeffs[t] =
        cb_mul(fp.coeffs[t], cb_unit_phase((long)r, (long)fp.cycle, digits));
  }
  return out;
}

}  // namespace

std::vector<ConjugateClass> group_conjugate_classes(
    const std::vector<ExpansionLeaf>& leaves, const RunConfig& cfg,
    std::vector<int>* leaf_order) {
  long digits = cfg.working_digits;
  size_t n = leaves.size();
  for (long fp_terms = 2; fp_terms <= 32; fp_terms *= 4) {
    std::vector<Fingerprint> fps(n);
    for (size_t i = 0; i < n; ++i)
      fps[i] = to_fingerprint(expand_leaf(leaves[i], fp_terms, cfg));

    std::vector<ConjugateClass> classes;
    std::vector<int> order;
    std::vector<bool> taken(n, false);
    bool ambiguous = false;
    for (size_t i = 0; i < n && !ambiguous; ++i) {
      if (taken[i]) continue;
      long long c = fps[i].cycle;
      ConjugateClass cls;
      cls.cycle = c;
      cls.finite = fps[i].finite;
      std::vector<int> members{(int)i};
      taken[i] = true;
      for (long long j = 1; j < c && !ambiguous; ++j) {
        Fingerprint want = conjugate_fp(fps[i], j, digits);
        int hit = -1;
        int hits = 0;
        for (size_t k = 0; k < n; ++k) {
          if (taken[k]) continue;
          if (fingerprint_match(want, fps[k], digits)) {
            ++hits;
            hit = (int)k;
          }
        }
        if (hits != 1) {
          ambiguous = true;
          break;
        }
        members.push_back(hit);
        taken[hit] = true;
      }
      if (ambiguous) break;
      cls.members = members;
      classes.push_back(std::move(cls));
      order.insert(order.end(), members.begin(), members.end());
    }
    if (!ambiguous) {
      long long total = 0;
      for (auto& cls : classes) total += cls.cycle;
      if (total != (long long)n)
        throw Error(Fail::checksum,
                    "conjugate classes sum to " + std::to_string(total) +
                        " but the function has degree " + std::to_string(n));
      if (leaf_order) *leaf_order = order;
      return classes;
    }
  }
  throw Error(Fail::checksum,
              "conjugate-class membership could not be separated; "
              "initial segments remain ambiguous");
}

BranchType classify_branch(const PuiseuxSeries& p, const FractionalPoly& local,
                           const RunConfig& cfg) {
  BranchType out;
  out.p = p.cycle;
  long long mmin = p.terms() ? p.expnum.front() : 0;
  long long first_nonzero_m = 0;
  for (size_t t = 0; t < p.terms(); ++t)
    if (p.expnum[t] != 0) {
      first_nonzero_m = p.expnum[t];
      break;
    }
  if (p.cycle == 1) {
    if (mmin >= 0) {
      // T, or E when the defining limit is indeterminate at the center
      ComplexBall w0 = zero_ball(local.digits);
      if (p.terms() && p.expnum.front() == 0) w0 = p.coeff.front();
      ComplexBall fw = eval_at_center(local.derivative_w(), w0);
      (void)cfg;
      out.kind = is_effective_zero(fw) ? BranchKind::E : BranchKind::T;
    } else {
      out.kind = BranchKind::L;
      out.q = mmin;
    }
    return out;
  }
  if (mmin < 0) {
    out.kind = BranchKind::P;
    out.q = mmin;
    return out;
  }
  out.q = first_nonzero_m;
  out.kind = first_nonzero_m >= p.cycle ? BranchKind::F : BranchKind::V;
  return out;
}

ComplexBall evaluate_series(const PuiseuxSeries& p, const ComplexBall& z_rel,
                            size_t terms) {
  long digits = std::max(z_rel.working_digits(), (long)16);
  if (terms > p.terms()) terms = p.terms();
  if (terms == 0) return zero_ball(digits);
  if (z_rel.is_effective_zero()) {
    if (p.expnum.front() < 0)
      throw Error(Fail::numeric,
                  "series with negative exponents evaluated at the center");
    for (size_t t = 0; t < terms; ++t)
      if (p.expnum[t] == 0) return p.coeff[t];
    return zero_ball(digits);
  }
  ComplexBall u = p.cycle == 1 ? z_rel : cb_root(z_rel, (long)p.cycle);
  ComplexBall cur = cb_pow_long(u, (long)p.expnum.front());
  ComplexBall acc = cb_mul(p.coeff.front(), cur);
  for (size_t t = 1; t < terms; ++t) {
    long long step = p.expnum[t] - p.expnum[t - 1];
    cur = cb_mul(cur, cb_pow_long(u, (long)step));
    acc = cb_add(acc, cb_mul(p.coeff[t], cur));
  }
  return acc;
}

long long series_order(const PuiseuxSeries& p, size_t m) {
  if (m == 0 || p.terms() == 0) return 0;
  if (m > p.terms()) m = p.terms();
  return Frac(p.expnum[m - 1], p.cycle).floor();
}

size_t term_for_order(const PuiseuxSeries& p, long long o) {
  for (size_t t = 0; t < p.terms(); ++t)
    if (Frac(p.expnum[t], p.cycle).floor() >= o) return t + 1;
  return p.terms();
}

std::optional<ComplexBall> series_slope(const PuiseuxSeries& p, long digits) {
  for (size_t t = 0; t < p.terms(); ++t) {
    long long m = p.expnum[t];
    if (m <= 0) {
      if (m < 0) return std::nullopt;
      continue;
    }
    if (m < p.cycle) return std::nullopt;  // fractional power below z^1
    if (m == p.cycle) return p.coeff[t];
    break;
  }
  return zero_ball(digits);
}

ExpansionSet expand_local(const FractionalPoly& local, const ComplexBall& center,
                          long target_terms, const RunConfig& cfg) {
  ExpansionSet out;
  out.center = center;
  out.local = local;
  out.degree = local.w_degree();

  auto leaves = initial_segments(local, cfg);
  if ((int)leaves.size() != out.degree)
    throw Error(Fail::checksum,
                "expected " + std::to_string(out.degree) + " initial segments, got " +
                    std::to_string(leaves.size()));
  auto classes = group_conjugate_classes(leaves, cfg);

  for (auto& cls : classes) {
    int gen_leaf = *std::min_element(cls.members.begin(), cls.members.end());
    PuiseuxSeries gen = expand_leaf(leaves[gen_leaf], target_terms, cfg);
    ConjugateClass built;
    built.cycle = cls.cycle;
    built.finite = gen.finite;
    built.type = classify_branch(gen, local, cfg);
    built.generator = (int)out.series.size();
    for (long long j = 0; j < cls.cycle; ++j) {
      PuiseuxSeries member =
          j == 0 ? gen : conjugate_series(gen, j, cfg.working_digits);
      member.series_index = (int)out.series.size() + 1;
      built.members.push_back((int)out.series.size());
      out.series.push_back(std::move(member));
    }
    out.classes.push_back(std::move(built));
  }
  long long total = 0;
  for (auto& cls : out.classes) total += cls.cycle;
  if (total != out.degree)
    throw Error(Fail::checksum, "cycle check-sum failed after expansion");
  return out;
}

ExpansionSet expand_at(const ExactPoly& f, const ComplexBall& center,
                       long target_terms, const RunConfig& cfg) {
  FractionalPoly local = translate_z(f, center, cfg);
  return expand_local(local, center, target_terms, cfg);
}

std::vector<long long> cycle_profile(const FractionalPoly& local,
                                     const RunConfig& cfg) {
  auto leaves = initial_segments(local, cfg);
  std::map<long long, long long> count;
  for (auto& leaf : leaves) count[leaf.cycle]++;
  std::vector<long long> profile;
  for (auto& [c, k] : count) {
    if (k % c != 0)
      throw Error(Fail::checksum,
                  std::to_string(k) + " branches of cycle size " +
                      std::to_string(c) + " cannot form whole conjugate classes");
    for (long long i = 0; i < k / c; ++i) profile.push_back(c);
  }
  std::sort(profile.rbegin(), profile.rend());
  return profile;
}

std::string series_dump(const PuiseuxSeries& p, int digits_shown) {
  std::ostringstream os;
  for (size_t t = 0; t < p.terms(); ++t) {
    os << p.expnum[t] << "/" << p.cycle << "\t"
       << rb_str(p.coeff[t].re, digits_shown) << "\t"
       << rb_str(p.coeff[t].im, digits_shown) << "\t"
       << p.coeff[t].rad_max().str() << "\n";
  }
  return os.str();
}

}  // namespace algfun
