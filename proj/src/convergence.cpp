#include "algfun/convergence.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace algfun {

BivariateNumeric BivariateNumeric::render(const ExactPoly& f, long digits) {
  BivariateNumeric out;
  out.prec = bits_for_digits(digits);
  out.rows.assign(f.w_degree() + 1, {});
  for (auto& [k, v] : f.terms) {
    auto& row = out.rows[k.second];
    if ((int)row.size() <= k.first)
      row.resize(k.first + 1, BigComplex::zero(out.prec));
    BigComplex c = BigComplex::zero(out.prec);
    mpfr_set_q(c.re.raw(), v.re.get_mpq_t(), MPFR_RNDN);
    mpfr_set_q(c.im.raw(), v.im.get_mpq_t(), MPFR_RNDN);
    row[k.first] = c;
  }
  return out;
}

namespace {

BigComplex eval_row(const std::vector<BigComplex>& row, const BigComplex& z,
                    mpfr_prec_t prec) {
  if (row.empty()) return BigComplex::zero(prec);
  BigComplex acc = row.back();
  for (int k = (int)row.size() - 2; k >= 0; --k)
    acc = bc_add(bc_mul(acc, z), row[k]);
  return acc;
}

BigComplex eval_row_dz(const std::vector<BigComplex>& row, const BigComplex& z,
                       mpfr_prec_t prec) {
  BigComplex acc = BigComplex::zero(prec);
  for (int k = (int)row.size() - 1; k >= 1; --k) {
    acc = bc_mul(acc, z);
    BigComplex t = row[k];
    mpfr_mul_si(t.re.raw(), t.re.raw(), k, MPFR_RNDN);
    mpfr_mul_si(t.im.raw(), t.im.raw(), k, MPFR_RNDN);
    acc = bc_add(acc, t);
  }
  return acc;
}

}  // namespace

BigComplex BivariateNumeric::eval(const BigComplex& z, const BigComplex& w) const {
  BigComplex acc = eval_row(rows.back(), z, prec);
  for (int j = (int)rows.size() - 2; j >= 0; --j)
    acc = bc_add(bc_mul(acc, w), eval_row(rows[j], z, prec));
  return acc;
}

BigComplex BivariateNumeric::eval_dw(const BigComplex& z, const BigComplex& w) const {
  BigComplex acc = BigComplex::zero(prec);
  for (int j = (int)rows.size() - 1; j >= 1; --j) {
    acc = bc_mul(acc, w);
    BigComplex t = eval_row(rows[j], z, prec);
    mpfr_mul_si(t.re.raw(), t.re.raw(), j, MPFR_RNDN);
    mpfr_mul_si(t.im.raw(), t.im.raw(), j, MPFR_RNDN);
    acc = bc_add(acc, t);
  }
  return acc;
}

BigComplex BivariateNumeric::eval_dz(const BigComplex& z, const BigComplex& w) const {
  BigComplex acc = eval_row_dz(rows.back(), z, prec);
  for (int j = (int)rows.size() - 2; j >= 0; --j)
    acc = bc_add(bc_mul(acc, w), eval_row_dz(rows[j], z, prec));
  return acc;
}

namespace {

// least squares with the curve constrained to lie at or below every point
// (active-set on the greatest-lower-bound constraints)
bool lower_bound_fit(const std::vector<double>& x, const std::vector<double>& y,
                     int order, std::vector<double>& beta, double& residual) {
  int n = (int)x.size();
  int k = order + 1;
  if (n < k + 1) return false;
  Eigen::MatrixXd X(n, k);
  Eigen::VectorXd Y(n);
  for (int i = 0; i < n; ++i) {
    double p = 1;
    for (int j = 0; j < k; ++j) {
      X(i, j) = p;
      p *= x[i];
    }
    Y(i) = y[i];
  }
  std::vector<int> active;
  Eigen::VectorXd b;
  for (int round = 0; round < 80; ++round) {
    int na = (int)active.size();
    // KKT system for min ||Xb - Y||^2 s.t. X_A b = Y_A
    Eigen::MatrixXd K(k + na, k + na);
    Eigen::VectorXd rhs(k + na);
    K.setZero();
    K.topLeftCorner(k, k) = 2.0 * X.transpose() * X;
    rhs.head(k) = 2.0 * X.transpose() * Y;
    for (int a = 0; a < na; ++a) {
      for (int j = 0; j < k; ++j) {
        K(k + a, j) = X(active[a], j);
        K(j, k + a) = X(active[a], j);
      }
      rhs(k + a) = Y(active[a]);
    }
    Eigen::VectorXd sol = K.colPivHouseholderQr().solve(rhs);
    b = sol.head(k);
    // multipliers must push the curve down; drop wrong-signed constraints
    bool dropped = false;
    for (int a = na - 1; a >= 0; --a) {
      if (sol(k + a) < -1e-12) {
        active.erase(active.begin() + a);
        dropped = true;
      }
    }
    if (dropped) continue;
    // add the worst violated point
    Eigen::VectorXd fit = X * b;
    int worst = -1;
    double worst_v = 1e-11;
    for (int i = 0; i < n; ++i) {
      double v = fit(i) - Y(i);
      bool is_active = std::find(active.begin(), active.end(), i) != active.end();
      if (!is_active && v > worst_v) {
        worst_v = v;
        worst = i;
      }
    }
    if (worst < 0) break;
    active.push_back(worst);
  }
  beta.assign(b.data(), b.data() + k);
  Eigen::VectorXd r = X * b - Y;
  residual = r.squaredNorm();
  return true;
}

}  // namespace

RootTestEstimate root_test_estimate(const PuiseuxSeries& p,
                                    const SingularList& list,
                                    const ComplexBall& base,
                                    const RunConfig& cfg) {
  RootTestEstimate out;
  if (p.finite) {
    out.infinite = true;
    return out;
  }
  std::vector<double> xs, ys;
  for (size_t t = 0; t < p.terms(); ++t) {
    if (p.expnum[t] <= 0) continue;
    double m = (double)p.expnum[t];
    double l2a = p.coeff[t].log2_abs();
    if (l2a == -HUGE_VAL) continue;
    double y = std::exp2(-((double)p.cycle / m) * l2a);
    if (!std::isfinite(y)) continue;
    xs.push_back(1.0 / m);
    ys.push_back(y);
  }
  if (xs.size() < 64)
    throw Error(Fail::numeric,
                "root test needs at least 64 usable terms, have " +
                    std::to_string(xs.size()));
  // trailing window: smallest 1/m values (series tail)
  size_t window = std::max<size_t>(32, xs.size() / 4);
  std::vector<double> wx(xs.end() - window, xs.end());
  std::vector<double> wy(ys.end() - window, ys.end());
  out.points.clear();
  for (size_t i = 0; i < xs.size(); ++i) out.points.emplace_back(xs[i], ys[i]);

  double best_res = HUGE_VAL;
  for (int order = 1; order <= 3; ++order) {
    std::vector<double> beta;
    double res;
    if (!lower_bound_fit(wx, wy, order, beta, res)) continue;
    if (beta[0] <= 0) continue;
    if (res < best_res) {
      best_res = res;
      out.curve_kind = order;
      out.r_estimate = beta[0];
    }
  }
  if (out.curve_kind == 0) {
    // degenerate data: fall back to the smallest trailing value
    out.curve_kind = 1;
    out.r_estimate = *std::min_element(wy.begin(), wy.end());
  }

  double best_gap = HUGE_VAL;
  for (auto& s : list.points) {
    double d = cb_sub(s.location, base).abs_double();
    if (d < 1e-300) continue;  // the base itself
    double gap = std::abs(d - out.r_estimate);
    if (gap < best_gap) {
      best_gap = gap;
      out.nearest_index = s.index;
    }
  }
  return out;
}

double separation_tolerance(const std::vector<ComplexBall>& values, double s_f) {
  if (values.size() < 2)
    throw Error(Fail::numeric, "separation tolerance needs at least two values");
  double best = HUGE_VAL;
  for (size_t i = 0; i < values.size(); ++i)
    for (size_t j = i + 1; j < values.size(); ++j) {
      ComplexBall d = cb_sub(values[i], values[j]);
      if (is_effective_zero(d))
        throw Error(Fail::numeric,
                    "coincident branch values: separation is an effective zero");
      best = std::min(best, d.abs_double());
    }
  return best * s_f;
}

namespace {

struct PathPiece {
  bool arc = false;
  double ax = 0, ay = 0, bx = 0, by = 0;       // line endpoints
  double cx = 0, cy = 0, r = 0, t0 = 0, t1 = 0;  // arc data
};

// straight route with half-perimeter detours around blockers
std::vector<PathPiece> plan_path(const BigComplex& from, const BigComplex& to,
                                 const std::vector<Blocker>& avoid) {
  double ax = from.re.to_double(), ay = from.im.to_double();
  double bx = to.re.to_double(), by = to.im.to_double();
  double dx = bx - ax, dy = by - ay;
  double len = std::hypot(dx, dy);
  struct Hit {
    double t;
    double cx, cy, r;
  };
  std::vector<Hit> hits;
  if (len > 0) {
    for (auto& bl : avoid) {
      double cx = bl.center.re.to_double(), cy = bl.center.im.to_double();
      double t = ((cx - ax) * dx + (cy - ay) * dy) / (len * len);
      if (t <= 1e-9 || t >= 1 - 1e-9) continue;
      double px = ax + t * dx, py = ay + t * dy;
      double dist = std::hypot(px - cx, py - cy);
      if (dist < bl.radius) hits.push_back({t, cx, cy, bl.radius});
    }
  }
  std::sort(hits.begin(), hits.end(),
            [](const Hit& a, const Hit& b) { return a.t < b.t; });
  std::vector<PathPiece> pieces;
  double px = ax, py = ay;
  for (auto& h : hits) {
    // entry and exit of the chord through the disc, widened a little
    double t_center = h.t;
    double foot_dist =
        std::hypot(ax + t_center * dx - h.cx, ay + t_center * dy - h.cy);
    double half = std::sqrt(std::max(h.r * h.r - foot_dist * foot_dist, 0.0));
    double margin = 0.15 * h.r;
    double t_in = t_center - (half + margin) / len;
    double t_out = t_center + (half + margin) / len;
    t_in = std::max(t_in, 0.0);
    t_out = std::min(t_out, 1.0);
    double inx = ax + t_in * dx, iny = ay + t_in * dy;
    double outx = ax + t_out * dx, outy = ay + t_out * dy;
    double rin = std::hypot(inx - h.cx, iny - h.cy);
    double rout = std::hypot(outx - h.cx, outy - h.cy);
    double r_arc = std::max({rin, rout, h.r * 1.05});
    // reproject entry/exit onto the arc circle
    double th_in = std::atan2(iny - h.cy, inx - h.cx);
    double th_out = std::atan2(outy - h.cy, outx - h.cx);
    inx = h.cx + r_arc * std::cos(th_in);
    iny = h.cy + r_arc * std::sin(th_in);
    outx = h.cx + r_arc * std::cos(th_out);
    outy = h.cy + r_arc * std::sin(th_out);
    (void)rin;
    (void)rout;
    pieces.push_back({false, px, py, inx, iny});
    // detour along the shorter half of the circle
    double span = std::remainder(th_out - th_in, 2 * M_PI);
    pieces.push_back({true, 0, 0, 0, 0, h.cx, h.cy, r_arc, th_in, th_in + span});
    px = outx;
    py = outy;
  }
  pieces.push_back({false, px, py, bx, by});
  return pieces;
}

struct Derivative {
  const BivariateNumeric& f;
  mpfr_prec_t prec;

  // dw/dt = -(f_z / f_w) * dz/dt
  bool operator()(const BigComplex& z, const BigComplex& w,
                  const BigComplex& dz, BigComplex& out) const {
    BigComplex fw = f.eval_dw(z, w);
    if (fw.is_zero()) return false;
    BigComplex fz = f.eval_dz(z, w);
    out = bc_neg(bc_mul(bc_div(fz, fw), dz));
    return true;
  }
};

void piece_point(const PathPiece& pc, double t, mpfr_prec_t prec, BigComplex& z,
                 BigComplex& dz) {
  if (!pc.arc) {
    z = BigComplex::from_doubles(pc.ax + t * (pc.bx - pc.ax),
                                 pc.ay + t * (pc.by - pc.ay), prec);
    dz = BigComplex::from_doubles(pc.bx - pc.ax, pc.by - pc.ay, prec);
  } else {
    double th = pc.t0 + t * (pc.t1 - pc.t0);
    z = BigComplex::from_doubles(pc.cx + pc.r * std::cos(th),
                                 pc.cy + pc.r * std::sin(th), prec);
    double s = pc.r * (pc.t1 - pc.t0);
    dz = BigComplex::from_doubles(-s * std::sin(th), s * std::cos(th), prec);
  }
}

// classic Cash-Karp 4(5) step
bool rk_step(const Derivative& deriv, const PathPiece& pc, double t, double h,
             const BigComplex& w, BigComplex& w_out, double& err,
             mpfr_prec_t prec) {
  static const double a2 = 1.0 / 5, a3 = 3.0 / 10, a4 = 3.0 / 5, a5 = 1.0,
                      a6 = 7.0 / 8;
  static const double b21 = 1.0 / 5;
  static const double b31 = 3.0 / 40, b32 = 9.0 / 40;
  static const double b41 = 3.0 / 10, b42 = -9.0 / 10, b43 = 6.0 / 5;
  static const double b51 = -11.0 / 54, b52 = 5.0 / 2, b53 = -70.0 / 27,
                      b54 = 35.0 / 27;
  static const double b61 = 1631.0 / 55296, b62 = 175.0 / 512,
                      b63 = 575.0 / 13824, b64 = 44275.0 / 110592,
                      b65 = 253.0 / 4096;
  static const double c1 = 37.0 / 378, c3 = 250.0 / 621, c4 = 125.0 / 594,
                      c6 = 512.0 / 1771;
  static const double d1 = 2825.0 / 27648, d3 = 18575.0 / 48384,
                      d4 = 13525.0 / 55296, d5 = 277.0 / 14336, d6 = 1.0 / 4;

  BigComplex z, dz, k1, k2, k3, k4, k5, k6, tmp;
  auto stage = [&](double tt, const BigComplex& ww, BigComplex& k) -> bool {
    piece_point(pc, tt, prec, z, dz);
    if (!deriv(z, ww, dz, k)) return false;
    k = bc_scale_double(k, h);
    return true;
  };
  if (!stage(t, w, k1)) return false;
  tmp = bc_add(w, bc_scale_double(k1, b21));
  if (!stage(t + a2 * h, tmp, k2)) return false;
  tmp = bc_add(w, bc_add(bc_scale_double(k1, b31), bc_scale_double(k2, b32)));
  if (!stage(t + a3 * h, tmp, k3)) return false;
  tmp = bc_add(w, bc_add(bc_scale_double(k1, b41),
                         bc_add(bc_scale_double(k2, b42), bc_scale_double(k3, b43))));
  if (!stage(t + a4 * h, tmp, k4)) return false;
  tmp = bc_add(
      w, bc_add(bc_scale_double(k1, b51),
                bc_add(bc_scale_double(k2, b52),
                       bc_add(bc_scale_double(k3, b53), bc_scale_double(k4, b54)))));
  if (!stage(t + a5 * h, tmp, k5)) return false;
  tmp = bc_add(
      w, bc_add(bc_scale_double(k1, b61),
                bc_add(bc_scale_double(k2, b62),
                       bc_add(bc_scale_double(k3, b63),
                              bc_add(bc_scale_double(k4, b64),
                                     bc_scale_double(k5, b65))))));
  if (!stage(t + a6 * h, tmp, k6)) return false;

  BigComplex w5 = bc_add(
      w, bc_add(bc_scale_double(k1, c1),
                bc_add(bc_scale_double(k3, c3),
                       bc_add(bc_scale_double(k4, c4), bc_scale_double(k6, c6)))));
  BigComplex w4 = bc_add(
      w, bc_add(bc_scale_double(k1, d1),
                bc_add(bc_scale_double(k3, d3),
                       bc_add(bc_scale_double(k4, d4),
                              bc_add(bc_scale_double(k5, d5),
                                     bc_scale_double(k6, d6))))));
  err = bc_sub(w5, w4).abs_double();
  w_out = w5;
  return true;
}

// The RK pair keeps the predictor inside the right basin; the Newton
// corrector then restores the value onto the curve to working precision.
bool integrate_piece(const BivariateNumeric& f, const PathPiece& pc,
                     BigComplex& w, long digits) {
  mpfr_prec_t prec = f.prec;
  Derivative deriv{f, prec};
  const double tol = 1e-12;
  double corr_stop = std::pow(10.0, -(double)digits + 4);
  double t = 0, h = 0.05;
  const double hmin = 1e-12;
  int steps = 0;
  while (t < 1.0 && steps < 100000) {
    ++steps;
    if (t + h > 1.0) h = 1.0 - t;
    BigComplex w_next;
    double err;
    bool ok = rk_step(deriv, pc, t, h, w, w_next, err, prec);
    double scale = std::max(1.0, w.abs_double());
    if (!ok || !(err < tol * scale)) {
      h *= ok ? std::max(0.1, 0.9 * std::pow(tol * scale / (err + 1e-300), 0.25))
              : 0.3;
      if (h < hmin) return false;
      continue;
    }
    // corrector: pull the value back onto the curve
    BigComplex z, dz;
    piece_point(pc, t + h, prec, z, dz);
    bool corrected = false;
    for (int c = 0; c < 8; ++c) {
      BigComplex fv = f.eval(z, w_next);
      BigComplex fw = f.eval_dw(z, w_next);
      if (fw.is_zero()) break;
      BigComplex corr = bc_div(fv, fw);
      double cmag = corr.abs_double();
      if (cmag > 0.05 * scale) break;  // keep off other sheets
      w_next = bc_sub(w_next, corr);
      if (cmag < corr_stop * scale) {
        corrected = true;
        break;
      }
    }
    if (!corrected) {
      h *= 0.3;
      if (h < hmin) return false;
      continue;
    }
    w = w_next;
    t += h;
    h *= std::min(4.0, std::max(0.2, 0.9 * std::pow(tol * scale / (err + 1e-300), 0.2)));
  }
  return t >= 1.0;
}

}  // namespace

std::vector<BigComplex> integrate_continuation(const BivariateNumeric& f,
                                               const BigComplex& from,
                                               const BigComplex& to,
                                               const std::vector<BigComplex>& values,
                                               const std::vector<Blocker>& avoid,
                                               const RunConfig& cfg,
                                               int* pieces) {
  auto path = plan_path(from, to, avoid);
  if (pieces) *pieces = (int)path.size();
  std::vector<BigComplex> out;
  out.reserve(values.size());
  double tol_exp = -(double)cfg.integration_digits / 2.0;
  for (auto& v0 : values) {
    BigComplex w = BigComplex::zero(f.prec);
    mpfr_set(w.re.raw(), v0.re.raw(), MPFR_RNDN);
    mpfr_set(w.im.raw(), v0.im.raw(), MPFR_RNDN);
    bool ok = true;
    for (auto& pc : path)
      if (!integrate_piece(f, pc, w, cfg.integration_digits)) {
        ok = false;
        break;
      }
    if (ok) {
      // endpoint residual check
      BigComplex z, dz;
      PathPiece last = path.back();
      piece_point(last, 1.0, f.prec, z, dz);
      double res = f.eval(z, w).abs_double();
      double scale = std::max(1.0, w.abs_double());
      if (!(res < std::pow(10.0, tol_exp) * scale)) ok = false;
    }
    if (!ok)
      throw Error(Fail::numeric, "integration failed along the path");
    out.push_back(w);
  }
  return out;
}

const ExpansionSet& ExpansionCache::at(const SingularList& list, int index) {
  auto it = memo.find(index);
  if (it != memo.end()) return it->second;
  ExpansionSet set = expand_at(*f, list.at(index).location, terms, cfg);
  return memo.emplace(index, std::move(set)).first->second;
}

namespace {

struct SheetState {
  int series = 0;    // base series index (0-based)
  int cls = 0;       // class index
  bool active = true;
  bool integrating = false;
};

double tail_estimate_log10(const PuiseuxSeries& p, double abs_z) {
  if (p.terms() == 0 || p.finite) return -HUGE_VAL;
  size_t last = p.terms() - 1;
  double la = p.coeff[last].log2_abs() * 0.30102999566398114;
  double e = (double)p.expnum[last] / (double)p.cycle;
  return la + e * std::log10(abs_z);
}

}  // namespace

WalkReport find_clsps(const ExactPoly& f, const SingularList& list,
                      int base_index, const ExpansionSet& base,
                      ExpansionCache& cache, const RunConfig& cfg) {
  WalkReport report;
  const ComplexBall& center = base.center;
  double base_perim =
      base_index > 0 ? list.at(base_index).perimeter : list.points.empty()
          ? 1.0
          : cfg.perimeter_factor *
                cb_sub(list.at(singular_sequence_from(list, center)[0]).location,
                       center)
                    .abs_double();

  // estimates and plan
  std::vector<int> est;
  for (size_t k = 0; k < base.classes.size(); ++k) {
    const PuiseuxSeries& gen = base.generator(k);
    RootTestEstimate e;
    if (gen.finite) {
      e.infinite = true;
    } else {
      try {
        e = root_test_estimate(gen, list, center, cfg);
      } catch (const Error&) {
        e = RootTestEstimate{};  // too few terms: no estimate
      }
    }
    if (e.nearest_index > 0) est.push_back(e.nearest_index);
    report.estimates.push_back(std::move(e));
  }
  std::vector<int> seq = base_index > 0 ? singular_sequence(list, base_index)
                                        : singular_sequence_from(list, center);
  if (est.empty())
    report.plan = seq;  // no estimates: walk the whole sequence
  else
    report.plan = comparison_sequence(seq, list, base_index, est,
                                      cfg.comparison_margin);

  // per-class results
  report.classes.resize(base.classes.size());
  int unresolved = 0;
  for (size_t k = 0; k < base.classes.size(); ++k) {
    ConvergenceResult& r = report.classes[k];
    r.class_index = (int)k;
    r.type = base.classes[k].type;
    r.cycle = base.classes[k].cycle;
    r.terms = (long)base.generator(k).terms();
    if (base.classes[k].finite) {
      r.infinite = true;
      r.resolved = true;
      r.method = "inspection";
    } else {
      ++unresolved;
    }
  }
  if (unresolved == 0) return report;

  std::vector<SheetState> sheets;
  for (size_t k = 0; k < base.classes.size(); ++k) {
    if (base.classes[k].finite) continue;
    for (int m : base.classes[k].members)
      sheets.push_back({m, (int)k, true, cfg.method == RunConfig::Method::integration});
  }

  BivariateNumeric flow = BivariateNumeric::render(f, cfg.integration_digits);
  BivariateNumeric flow_hi = BivariateNumeric::render(f, cfg.integration_digits_hi);
  BigComplex center_mid = midpoint(center);

  auto ray_continue = [&](int series_idx, const SingularPoint& target,
                          const BigComplex& D_mid) -> BigComplex {
    // start on the base perimeter toward the target, seeded by the series
    BigComplex dir = bc_sub(midpoint(target.location), center_mid);
    double dl = dir.abs_double();
    BigComplex A = bc_add(center_mid, bc_scale_double(dir, base_perim / dl));
    ComplexBall a_rel = ball_from(bc_sub(A, center_mid));
    ComplexBall v0 = evaluate_series(base.series[series_idx], a_rel,
                                     base.series[series_idx].terms());
    std::vector<Blocker> avoid;
    for (auto& s : list.points) {
      if (s.index == target.index) continue;
      double d_base = cb_sub(s.location, center).abs_double();
      if (d_base < 1e-300) continue;  // the base itself
      avoid.push_back({midpoint(s.location), s.perimeter});
    }
    RunConfig icfg = cfg;
    for (int attempt = 0; attempt < 2; ++attempt) {
      const BivariateNumeric& fl = attempt == 0 ? flow : flow_hi;
      icfg.integration_digits =
          attempt == 0 ? cfg.integration_digits : cfg.integration_digits_hi;
      try {
        auto w = integrate_continuation(fl, A, D_mid, {midpoint(v0)}, avoid, icfg);
        return w[0];
      } catch (const Error&) {
        if (attempt == 1) throw;
      }
    }
    throw Error(Fail::numeric, "unreachable");
  };

  for (int idx : report.plan) {
    if (unresolved == 0) break;
    const SingularPoint& sn = list.at(idx);
    // D on the target perimeter along the line back to the base
    ComplexBall diff = cb_sub(center, sn.location);
    RealBall dist = cb_abs(diff);
    ComplexBall unit = {rb_div(diff.re, dist), rb_div(diff.im, dist)};
    ComplexBall D = cb_add(sn.location,
                           cb_mul(unit, ComplexBall::from_doubles(
                                            sn.perimeter, 0, cfg.working_digits)));
    BigComplex D_mid = midpoint(D);

    const ExpansionSet& at_n = cache.at(list, idx);
    ComplexBall zr_n = cb_sub(D, sn.location);
    std::vector<ComplexBall> u;
    u.reserve(at_n.series.size());
    for (auto& s : at_n.series) u.push_back(evaluate_series(s, zr_n, s.terms()));
    double s_t = separation_tolerance(u, cfg.separation_factor);

    ComplexBall zr_b = cb_sub(D, center);
    double abs_zr_b = zr_b.abs_double();

    for (auto& sheet : sheets) {
      if (!sheet.active || report.classes[sheet.cls].resolved) continue;
      ComplexBall v;
      bool have_v = false;
      if (!sheet.integrating) {
        const PuiseuxSeries& ps = base.series[sheet.series];
        v = evaluate_series(ps, zr_b, ps.terms());
        have_v = true;
        double tail = tail_estimate_log10(ps, abs_zr_b);
        bool too_coarse = tail > std::log10(s_t) - 1.0;
        bool too_fuzzy = effective_precision(v) < 6;
        if (too_coarse || too_fuzzy) {
          if (cfg.method == RunConfig::Method::comparison) {
            sheet.active = false;  // cannot be continued by this method
            continue;
          }
          sheet.integrating = true;
          have_v = false;
        }
      }
      if (!have_v) {
        BigComplex w = ray_continue(sheet.series, sn, D_mid);
        v = ball_from(w);
      }
      int hit = -1, hits = 0;
      for (size_t j = 0; j < u.size(); ++j) {
        if (cb_sub(v, u[j]).abs_double() < s_t) {
          ++hits;
          hit = (int)j;
        }
      }
      if (hits != 1) {
        if (!sheet.integrating && cfg.method != RunConfig::Method::comparison) {
          // retry once through the integrated value
          sheet.integrating = true;
          BigComplex w = ray_continue(sheet.series, sn, D_mid);
          v = ball_from(w);
          hits = 0;
          for (size_t j = 0; j < u.size(); ++j) {
            if (cb_sub(v, u[j]).abs_double() < s_t) {
              ++hits;
              hit = (int)j;
            }
          }
        }
        if (hits != 1) continue;  // ambiguous here; try again further out
      }
      int target_cls = at_n.class_of_series(hit);
      const ConjugateClass& tc = at_n.classes[target_cls];
      bool analytic = tc.cycle == 1 && tc.type.is_analytic_onecycle();
      if (!analytic) {
        ConvergenceResult& r = report.classes[sheet.cls];
        r.resolved = true;
        r.clsp_index = idx;
        r.radius = cb_sub(center, sn.location).abs_double();
        r.method = sheet.integrating ? "integration" : "comparison";
        --unresolved;
      }
    }
  }

  for (auto& r : report.classes) {
    if (!r.resolved && !report.plan.empty())
      r.lower_bound =
          cb_sub(center, list.at(report.plan.back()).location).abs_double();
  }
  return report;
}

}  // namespace algfun
