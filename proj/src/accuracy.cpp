#include "algfun/accuracy.hpp"

#include <Eigen/Dense>

#include <random>
#include <set>

namespace algfun {

std::vector<ComplexBall> reference_roots(const ExactPoly& f, const ComplexBall& z_a,
                                         long digits, const RunConfig& cfg) {
  int n = f.w_degree();
  std::vector<ComplexBall> coeffs(n + 1, ComplexBall::exact_long(0, digits));
  for (int j = 0; j <= n; ++j) {
    ExactUniPoly col = f.w_coefficient(j);
    if (col.is_zero()) continue;
    ComplexBall acc = ComplexBall::exact_long(0, digits);
    for (int k = col.degree(); k >= 0; --k)
      acc = cb_add(cb_mul(acc, z_a), col.c[k].to_ball(digits));
    coeffs[j] = acc;
  }
  auto roots = roots_of_balls(coeffs, digits, cfg);
  std::vector<ComplexBall> out;
  for (auto& r : roots)
    for (int k = 0; k < r.multiplicity; ++k) out.push_back(r.value);
  return out;
}

ComplexBall match_root(const ComplexBall& v, const std::vector<ComplexBall>& roots,
                       double s_t) {
  int hits = 0;
  const ComplexBall* best = nullptr;
  double best_d = HUGE_VAL;
  std::set<std::pair<double, double>> seen;  // collapse multiplicity copies
  for (auto& r : roots) {
    double d = cb_sub(v, r).abs_double();
    if (d >= s_t) continue;
    if (seen.insert({r.re.to_double(), r.im.to_double()}).second) ++hits;
    if (d < best_d) {
      best_d = d;
      best = &r;
    }
  }
  if (hits == 0)
    throw Error(Fail::numeric, "no reference root within the separation tolerance");
  if (hits > 1)
    throw Error(Fail::numeric, "ambiguous root match within the tolerance");
  return *best;
}

std::vector<AccuracySample> sample_accuracy(const ExactPoly& f,
                                            const ExpansionSet& base,
                                            int class_index, double R,
                                            const RunConfig& cfg,
                                            std::vector<double> r_grid,
                                            int order_count, int per_cell) {
  const PuiseuxSeries& gen = base.generator((size_t)class_index);
  if (gen.finite || !(R > 0) || !std::isfinite(R))
    throw Error(Fail::numeric, "accuracy sampling needs a finite radius");
  if (r_grid.empty())
    for (int k = 1; k <= 24; ++k) r_grid.push_back(k / 25.0);

  long long o_max = series_order(gen, gen.terms());
  std::vector<long long> orders;
  {
    long long o_min = std::max<long long>(1, series_order(gen, 2));
    double lo = std::log((double)std::max<long long>(o_min, 1));
    double hi = std::log((double)std::max<long long>(o_max, o_min + 1));
    std::set<long long> distinct;
    for (int i = 0; i < order_count; ++i) {
      double f01 = order_count == 1 ? 1.0 : (double)i / (order_count - 1);
      distinct.insert((long long)std::llround(std::exp(lo + f01 * (hi - lo))));
    }
    orders.assign(distinct.begin(), distinct.end());
  }

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> uangle(0.0, 2 * M_PI);
  std::vector<AccuracySample> out;
  long digits = cfg.working_digits;

  for (double rf : r_grid) {
    for (long long o : orders) {
      size_t m = term_for_order(gen, o);
      for (int rep = 0; rep < per_cell; ++rep) {
        double th = uangle(rng);
        double rr = rf * R;
        ComplexBall z_r = ComplexBall::from_doubles(rr * std::cos(th),
                                                    rr * std::sin(th), digits);
        ComplexBall v_s = evaluate_series(gen, z_r, m);
        ComplexBall z_a = cb_add(base.center, z_r);
        std::vector<ComplexBall> roots;
        try {
          roots = reference_roots(f, z_a, digits, cfg);
        } catch (const Error&) {
          continue;  // sampling landed somewhere degenerate
        }
        double s_t;
        try {
          s_t = separation_tolerance(roots, cfg.separation_factor);
        } catch (const Error&) {
          continue;
        }
        ComplexBall v_b;
        try {
          v_b = match_root(v_s, roots, s_t);
        } catch (const Error&) {
          continue;
        }
        RealBall c_e = cb_abs(cb_sub(v_b, v_s));
        if (c_e.effective_precision() == 0) continue;  // noise-dominated
        double l10 = c_e.mid.log2_abs() * 0.30102999566398114;
        AccuracySample s;
        s.r_f = rf;
        s.order = o;
        s.angle = th;
        s.term_count = (long)m;
        s.s_a = -l10;
        out.push_back(s);
      }
    }
  }
  return out;
}

AccuracyModel fit_accuracy_model(const std::vector<AccuracySample>& samples) {
  std::set<double> rset;
  std::set<long long> oset;
  for (auto& s : samples) {
    rset.insert(s.r_f);
    oset.insert(s.order);
  }
  if (samples.size() < 16 || rset.size() < 3 || oset.size() < 3)
    throw Error(Fail::numeric,
                "accuracy fit needs at least 16 samples over 3 radii and 3 orders");
  Eigen::MatrixXd X(samples.size(), 4);
  Eigen::VectorXd Y(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    double lr = std::log(samples[i].r_f);
    X(i, 0) = 1;
    X(i, 1) = lr;
    X(i, 2) = (double)samples[i].order;
    X(i, 3) = (double)samples[i].order * lr;
    Y(i) = samples[i].s_a;
  }
  Eigen::VectorXd beta = X.colPivHouseholderQr().solve(Y);
  AccuracyModel m;
  m.a = beta(0);
  m.b = beta(1);
  m.c = beta(2);
  m.d = beta(3);
  m.samples = (long)samples.size();
  Eigen::VectorXd r = X * beta - Y;
  m.variance = r.squaredNorm() / (double)samples.size();
  return m;
}

long long order_for_accuracy(const AccuracyModel& m, double r_f, double e_a) {
  double lr = std::log(r_f);
  double den = m.c + m.d * lr;
  if (!(den > 0))
    throw Error(Fail::numeric,
                "order function undefined: c + d log(r) is not positive");
  double o = (e_a - m.a - m.b * lr) / den;
  if (o < 0) o = 0;
  return (long long)std::ceil(o);
}

std::vector<std::pair<size_t, long>> precision_profile(const PuiseuxSeries& p) {
  std::vector<std::pair<size_t, long>> out;
  for (size_t t = 0; t < p.terms(); ++t)
    out.emplace_back(t + 1, effective_precision(p.coeff[t]));
  return out;
}

}  // namespace algfun
