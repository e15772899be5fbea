// Acceptance suite: one pass/fail line per criterion, nonzero exit when
// any criterion fails. Heavier full-scale fixtures run only when
// ALGFUN_RUN_EXPENSIVE is set.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "algfun/accuracy.hpp"
#include "algfun/geometry.hpp"
#include "algfun/report.hpp"

using namespace algfun;

static int failures = 0;

static void verdict(bool ok, const std::string& name) {
  std::printf("%s  %s\n", ok ? "PASS" : "FAIL", name.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

static std::string read_fixture(const char* name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
  std::string s, line;
  while (std::getline(in, line)) s += line;
  return s;
}

static RunConfig desk_config(long digits, long floor_digits) {
  RunConfig cfg;
  cfg.working_digits = digits;
  cfg.precision_floor = floor_digits;
  return cfg;
}

static bool near_rel(double got, double want, double tol) {
  return std::abs(got - want) <= tol * std::abs(want);
}

// ---------------------------------------------------------------- criterion 1
static void criterion1() {
  bool ok = true;
  std::string why;
  try {
    RunConfig cfg = desk_config(100, 10);
    ExactPoly f2 = parse_poly(read_fixture("tc2.txt"));
    SingularList list = singular_list(f2, 100, cfg);
    ok &= list.total() == 2;
    ok &= is_effective_zero(list.at(1).location);
    ok &= cb_sub(list.at(2).location, ComplexBall::exact_long(1, 100)).abs_double() <
          1e-50;

    // origin: one finite 4-cycle polynomial class with quartic-root pattern
    ExpansionSet origin = expand_at(f2, ComplexBall::exact_long(0, 100), 1024, cfg);
    ok &= origin.classes.size() == 1 && origin.classes[0].cycle == 4 &&
          origin.classes[0].finite;
    auto tag = [](const ComplexBall& c) -> char {
      double re = c.re.to_double(), im = c.im.to_double();
      if (std::abs(re - 1) < 1e-30 && std::abs(im) < 1e-30) return '+';
      if (std::abs(re + 1) < 1e-30 && std::abs(im) < 1e-30) return '-';
      if (std::abs(im - 1) < 1e-30 && std::abs(re) < 1e-30) return 'I';
      if (std::abs(im + 1) < 1e-30 && std::abs(re) < 1e-30) return 'i';
      return '?';
    };
    std::set<std::string> got;
    for (int m : origin.classes[0].members) {
      std::string sig;
      for (auto& c : origin.series[m].coeff) sig += tag(c);
      got.insert(sig);
    }
    ok &= got == std::set<std::string>{"+-+-", "+i-I", "++++", "+I-i"};

    // z = 1: (E,E,E,T) with derivative limits {-1/2, -1/2 +- i/2}
    ExpansionSet at1 = expand_at(f2, list.at(2).location, 1024, cfg);
    int e_count = 0, t_count = 0, slope_hits = 0;
    for (size_t k = 0; k < at1.classes.size(); ++k) {
      if (at1.classes[k].type.kind == BranchKind::E) {
        ++e_count;
        auto sl = series_slope(at1.generator(k), 100);
        if (sl) {
          double re = sl->re.to_double(), im = sl->im.to_double();
          if (std::abs(re + 0.5) < 1e-20 &&
              (std::abs(im) < 1e-20 || std::abs(std::abs(im) - 0.5) < 1e-20))
            ++slope_hits;
        }
      }
      if (at1.classes[k].type.kind == BranchKind::T) ++t_count;
    }
    ok &= e_count == 3 && t_count == 1 && slope_hits == 3;

    // CLSP = origin with R = 1 under both methods
    for (auto method :
         {RunConfig::Method::comparison, RunConfig::Method::integration}) {
      RunConfig mcfg = cfg;
      mcfg.method = method;
      ExpansionCache cache;
      cache.f = &f2;
      cache.cfg = mcfg;
      cache.terms = 128;
      WalkReport rep = find_clsps(f2, list, 2, at1, cache, mcfg);
      for (auto& r : rep.classes) {
        ok &= r.resolved && r.clsp_index == 1 && near_rel(r.radius, 1.0, 1e-9);
      }
    }

    // K = 6, G = 0
    RamificationProfile prof = ramification_profile(f2, list, true, cfg);
    GenusReport rep = riemann_hurwitz(prof, 4);
    ok &= rep.K == 6 && rep.G == 0;
  } catch (const std::exception& e) {
    ok = false;
    why = std::string(" (") + e.what() + ")";
  }
  verdict(ok, "criterion 1: quartic fixture end-to-end" + why);
}

// ------------------------------------------------------- criteria 2, 3 and 4
static void criteria_2_3_4() {
  bool ok2 = true, ok3 = true, ok4 = true;
  std::string why2, why3, why4;
  try {
    RunConfig cfg = desk_config(100, 20);
    cfg.comparison_terms = 64;
    ExactPoly f1 = parse_poly(read_fixture("tc1.txt"));
    SingularList list = singular_list(f1, 100, cfg);
    ok2 &= list.total() == 179;
    int poles = 0;
    for (auto& p : list.points) poles += p.is_pole ? 1 : 0;
    ok2 &= poles == 2;

    ExpansionSet base = expand_at(f1, ComplexBall::exact_long(0, 100), 256, cfg);
    std::vector<std::string> want_types{"F5^16", "F4^9", "F3^4", "V2^1", "T"};
    std::vector<long long> want_cycles{5, 4, 3, 2, 1};
    ok2 &= base.classes.size() == 5;
    for (size_t k = 0; k < base.classes.size() && k < 5; ++k) {
      ok2 &= base.classes[k].type.str() == want_types[k];
      ok2 &= base.classes[k].cycle == want_cycles[k];
    }

    ExpansionCache cache;
    cache.f = &f1;
    cache.cfg = cfg;
    cache.terms = cfg.comparison_terms;
    WalkReport walk = find_clsps(f1, list, 1, base, cache, cfg);
    std::vector<int> want_clsp{27, 7, 2, 2, 118};
    std::vector<double> want_r{0.641328, 0.504901, 0.166817, 0.166817, 1.09352};
    for (size_t k = 0; k < walk.classes.size() && k < 5; ++k) {
      const ConvergenceResult& r = walk.classes[k];
      ok2 &= r.resolved && r.clsp_index == want_clsp[k];
      ok2 &= near_rel(r.radius, want_r[k], 1e-4);
    }

    RamificationProfile prof = ramification_profile(f1, list, true, cfg);
    GenusReport genus = riemann_hurwitz(prof, 15);
    ok2 &= genus.K == 200 && genus.G == 86;
    verdict(ok2, "criterion 2: 15-degree fixture at desk scale");

    // root test estimates within 10% of the resolved radii
    for (size_t k = 0; k < walk.classes.size(); ++k) {
      if (walk.estimates[k].infinite) continue;
      ok3 &= near_rel(walk.estimates[k].r_estimate, walk.classes[k].radius, 0.10);
    }
    verdict(ok3, "criterion 3: root-test estimates within 10%");

    // accuracy model on the 5-cycle class
    int k5 = 0;  // F5^16 is the first class
    auto samples = sample_accuracy(f1, base, k5, walk.classes[k5].radius, cfg);
    AccuracyModel model = fit_accuracy_model(samples);
    ok4 &= model.d > -0.46 && model.d < -0.41;
    ok4 &= model.variance < 1.0;
    long long o_est = order_for_accuracy(model, 1.0 / 3.0, 20.0);
    ok4 &= o_est >= 30 && o_est <= 40;
    const PuiseuxSeries& gen = base.generator(k5);
    size_t term = term_for_order(gen, o_est);
    double R = walk.classes[k5].radius;
    double rr = R / 3.0;
    ComplexBall z_r = ComplexBall::from_doubles(rr * std::cos(3 * M_PI / 4),
                                                rr * std::sin(3 * M_PI / 4), 100);
    ComplexBall v_s = evaluate_series(gen, z_r, term);
    auto roots = reference_roots(f1, cb_add(base.center, z_r), 100, cfg);
    double best = HUGE_VAL;
    for (auto& rt : roots) best = std::min(best, cb_sub(v_s, rt).abs_double());
    ok4 &= best < 1e-18;
    std::ostringstream o4;
    o4 << "criterion 4: accuracy model on the 5-cycle class (d=" << model.d
       << ", var=" << model.variance << ", order=" << o_est << ", term=" << term
       << ", digits=" << (int)-std::log10(best) << ")";
    verdict(ok4, o4.str());
  } catch (const std::exception& e) {
    std::string why = std::string(" (") + e.what() + ")";
    if (!why2.empty() || true) {
      verdict(false, "criterion 2: 15-degree fixture at desk scale" + why);
      verdict(false, "criterion 3: root-test estimates within 10%" + why);
      verdict(false, "criterion 4: accuracy model on the 5-cycle class" + why);
    }
  }
}

// ---------------------------------------------------------------- criterion 5
static void criterion5() {
  bool ok = true;
  std::string why;
  try {
    RunConfig cfg = desk_config(100, 5);
    ExactPoly f4 = parse_poly(read_fixture("tc4.txt"));
    SingularList list = singular_list(f4, 100, cfg);
    ok &= list.total() == 127;
    RamificationProfile prof = ramification_profile(f4, list, true, cfg);
    GenusReport genus = riemann_hurwitz(prof, 35);
    ok &= genus.K == 132 && genus.G == 32;
    std::vector<long long> want_inf{5, 2};
    want_inf.insert(want_inf.end(), 28, 1);
    ok &= prof.points.back().index == 0 && prof.points.back().cycles == want_inf;
  } catch (const std::exception& e) {
    ok = false;
    why = std::string(" (") + e.what() + ")";
  }
  verdict(ok, "criterion 5: 35-degree fixture genus with infinity profile" + why);

  if (std::getenv("ALGFUN_RUN_EXPENSIVE")) {
    struct Case {
      const char* file;
      int degree;
      long long K, G;
    };
    for (auto c : {Case{"tc3.txt", 34, 594, 264}, Case{"tc5.txt", 50, 4634, 2268},
                   Case{"tc6.txt", 25, 700, 326}}) {
      bool okx = true;
      std::string whyx;
      try {
        RunConfig cfg = desk_config(100, 0);
        ExactPoly f = parse_poly(read_fixture(c.file));
        SingularList list = singular_list(f, 100, cfg);
        RamificationProfile prof = ramification_profile(f, list, true, cfg);
        GenusReport genus = riemann_hurwitz(prof, c.degree);
        okx &= genus.K == c.K && genus.G == c.G;
      } catch (const std::exception& e) {
        okx = false;
        whyx = std::string(" (") + e.what() + ")";
      }
      verdict(okx, std::string("criterion 5 (expensive): ") + c.file + whyx);
    }
  } else {
    std::printf("SKIP  criterion 5 (expensive fixtures): set "
                "ALGFUN_RUN_EXPENSIVE=1 to run tc3/tc5/tc6\n");
  }
}

// ---------------------------------------------------------------- criterion 6
static void criterion6() {
  // cycle check-sums and K parity are enforced inside the library (any
  // violation throws), so the runs above already exercise them; here the
  // remaining property suites run on desk-scale fixtures.
  bool ok_closure = true, ok_sym = true, ok_decay = true, ok_agree = true,
       ok_det = true;
  std::string why;
  try {
    RunConfig cfg = desk_config(100, 10);
    cfg.seed = 7;

    // conjugate closure: conjugate values match the nearest function roots
    // at 10 random in-perimeter points
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uu(0.15, 0.85), ua(0, 2 * M_PI);
    for (int which = 0; which < 2; ++which) {
      ExactPoly f = which == 0 ? parse_poly(read_fixture("tc2.txt"))
                               : parse_poly("w^2 - z*(z - 1)");
      SingularList list = singular_list(f, 100, cfg);
      ExpansionSet base =
          expand_at(f, list.at(1).location, 128, cfg);
      double perim = list.at(1).perimeter;
      for (int trial = 0; trial < 10; ++trial) {
        double r = perim * uu(rng), th = ua(rng);
        ComplexBall z_r =
            ComplexBall::from_doubles(r * std::cos(th), r * std::sin(th), 100);
        auto roots = reference_roots(f, cb_add(base.center, z_r), 100, cfg);
        for (auto& cls : base.classes) {
          std::vector<ComplexBall> vals;
          for (int m : cls.members)
            vals.push_back(
                evaluate_series(base.series[m], z_r, base.series[m].terms()));
          // each conjugate value must be matched by a distinct root
          std::vector<bool> used(roots.size(), false);
          for (auto& v : vals) {
            double best = HUGE_VAL;
            int bi = -1;
            for (size_t i = 0; i < roots.size(); ++i) {
              if (used[i]) continue;
              double d = cb_sub(v, roots[i]).abs_double();
              if (d < best) {
                best = d;
                bi = (int)i;
              }
            }
            if (bi >= 0) used[bi] = true;
            double tail = std::pow(r / perim, (double)base.series[0].terms() / 4);
            double tol =
                std::max({v.rad_max().log10() > -300 ? std::pow(10, v.rad_max().log10() + 2)
                                                     : 1e-300,
                          tail, 1e-20});
            ok_closure &= best < tol * 1e6 + 1e-12;
          }
        }
      }
    }

    // symmetric sums of conjugates keep only integer exponents
    {
      ExactPoly f1 = parse_poly(read_fixture("tc1.txt"));
      RunConfig c1 = desk_config(100, 10);
      ExpansionSet base = expand_at(f1, ComplexBall::exact_long(0, 100), 48, c1);
      for (auto& cls : base.classes) {
        const PuiseuxSeries& gen = base.generator(&cls - base.classes.data());
        for (size_t t = 0; t < gen.terms(); ++t) {
          ComplexBall sum = ComplexBall::exact_long(0, 100);
          for (long long j = 0; j < cls.cycle; ++j)
            sum = cb_add(sum, conjugate_series(gen, j, 100).coeff[t]);
          if (gen.expnum[t] % gen.cycle != 0) {
            // non-integer exponents must cancel within the summed radii
            double mag = sum.log2_abs() * 0.30103;
            double rad = sum.rad_max().log10();
            ok_sym &= mag == -HUGE_VAL || mag <= rad + 1.0;
          }
        }
      }
    }

    // residual decay slope tracks the next exponent within 5%
    {
      ExactPoly f2 = parse_poly(read_fixture("tc2.txt"));
      SingularList list = singular_list(f2, 100, cfg);
      ExpansionSet at1 = expand_at(f2, list.at(2).location, 40, cfg);
      const PuiseuxSeries* tser = nullptr;
      for (auto& cls : at1.classes)
        if (cls.type.kind == BranchKind::T)
          tser = &at1.generator(&cls - at1.classes.data());
      size_t m = 8;
      double e_next = (double)tser->expnum[m] / (double)tser->cycle;
      std::vector<double> xs, ys;
      for (int k = 0; k <= 5; ++k) {
        double r = 1e-2 * std::pow(0.5, k);
        ComplexBall z = ComplexBall::from_doubles(r, 0, 100);
        ComplexBall w = evaluate_series(*tser, z, m);
        ComplexBall res = at1.local.eval(z, w);
        xs.push_back(std::log(r));
        ys.push_back(res.log2_abs() * std::log(2.0));
      }
      double n = xs.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
      }
      double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
      ok_decay &= std::abs(slope - e_next) / e_next < 0.05;
    }

    // method agreement wherever both resolve
    {
      for (const char* which : {"tc2", "parabola"}) {
        ExactPoly f = std::string(which) == "tc2"
                          ? parse_poly(read_fixture("tc2.txt"))
                          : parse_poly("w^2 - z*(z - 1)");
        SingularList list = singular_list(f, 100, cfg);
        int base_idx = std::string(which) == "tc2" ? 2 : 1;
        ExpansionSet base = expand_at(f, list.at(base_idx).location, 128, cfg);
        std::vector<int> clsp_by_method;
        for (auto method : {RunConfig::Method::comparison,
                            RunConfig::Method::integration}) {
          RunConfig mcfg = cfg;
          mcfg.method = method;
          ExpansionCache cache;
          cache.f = &f;
          cache.cfg = mcfg;
          cache.terms = 64;
          WalkReport rep = find_clsps(f, list, base_idx, base, cache, mcfg);
          for (auto& r : rep.classes)
            if (r.resolved && !r.infinite) clsp_by_method.push_back(r.clsp_index);
        }
        size_t half = clsp_by_method.size() / 2;
        for (size_t i = 0; i < half; ++i)
          ok_agree &= clsp_by_method[i] == clsp_by_method[half + i];
      }
    }

    // determinism: identical seed gives byte-identical reports
    {
      auto run_once = [&]() {
        std::ostringstream os;
        ExactPoly f2 = parse_poly(read_fixture("tc2.txt"));
        SingularList list = singular_list(f2, 100, cfg);
        report_singular_list(os, list, Format::csv);
        ExpansionSet base = expand_at(f2, list.at(2).location, 128, cfg);
        ExpansionCache cache;
        cache.f = &f2;
        cache.cfg = cfg;
        cache.terms = 64;
        WalkReport rep = find_clsps(f2, list, 2, base, cache, cfg);
        auto samples = sample_accuracy(f2, base, 0, rep.classes[0].radius, cfg);
        emit_accuracy_samples(os, samples);
        for (auto& r : rep.classes)
          os << r.type.str() << "," << r.clsp_index << "," << r.radius << "\n";
        return os.str();
      };
      std::string a = run_once(), b = run_once();
      ok_det = a == b && !a.empty();
    }
  } catch (const std::exception& e) {
    why = std::string(" (") + e.what() + ")";
    ok_closure = ok_sym = ok_decay = ok_agree = ok_det = false;
  }
  verdict(ok_closure, "criterion 6a: conjugate closure against reference roots" + why);
  verdict(ok_sym, "criterion 6b: symmetric-sum integrality" + why);
  verdict(ok_decay, "criterion 6c: residual-decay slope within 5%" + why);
  verdict(ok_agree, "criterion 6d: comparison and integration methods agree" + why);
  verdict(ok_det, "criterion 6e: determinism under a fixed seed" + why);
}

// ---------------------------------------------------------------- criterion 7
static void criterion7() {
  bool ok = true;
  std::string why;
  int analyzed = 0;
  try {
    RunConfig cfg = desk_config(100, 5);
    std::mt19937_64 rng(20240801);
    std::uniform_int_distribution<int> coef(-6, 6), den(1, 3);
    // points deep inside the perimeter: a 4-cycle series truncated at 64
    // terms reaches order ~16, so 30 digits need (r/R)^16 below 1e-30
    std::uniform_real_distribution<double> uu(0.005, 0.04), ua(0, 2 * M_PI);
    int attempts = 0;
    while (analyzed < 20 && attempts < 200) {
      ++attempts;
      ExactPoly f;
      int wdeg = 2 + (int)(rng() % 3);
      for (int zp = 0; zp <= 4 - wdeg + 1 && zp <= 3; ++zp)
        for (int wp = 0; wp <= wdeg; ++wp) {
          int c = coef(rng);
          if (c) f.add_term(zp, wp, GaussianRational::ratio(c, den(rng)));
        }
      if (f.is_zero() || f.w_degree() < 2) continue;
      SingularList list;
      try {
        list = singular_list(f, 100, cfg);
      } catch (const Error&) {
        continue;  // not squarefree or degenerate
      }
      if (list.total() == 0) continue;
      ExpansionSet base;
      try {
        base = expand_at(f, list.at(1).location, 64, cfg);
      } catch (const Error&) {
        continue;  // precision-floor or ambiguity at this scale
      }
      double perim = list.at(1).perimeter;
      bool all_match = true;
      for (size_t k = 0; k < base.classes.size(); ++k) {
        const PuiseuxSeries& gen = base.generator(k);
        if (gen.terms() == 0) continue;
        for (int trial = 0; trial < 5; ++trial) {
          double r = perim * uu(rng), th = ua(rng);
          ComplexBall z_r =
              ComplexBall::from_doubles(r * std::cos(th), r * std::sin(th), 100);
          ComplexBall v;
          try {
            v = evaluate_series(gen, z_r, gen.terms());
          } catch (const Error&) {
            all_match = false;
            continue;
          }
          auto roots = reference_roots(f, cb_add(base.center, z_r), 100, cfg);
          double best = HUGE_VAL;
          for (auto& rt : roots) best = std::min(best, cb_sub(v, rt).abs_double());
          double scale = std::max(1.0, v.abs_double());
          all_match &= best <= 1e-30 * scale;
        }
      }
      ok &= all_match;
      ++analyzed;
    }
    ok &= analyzed == 20;
  } catch (const std::exception& e) {
    ok = false;
    why = std::string(" (") + e.what() + ")";
  }
  std::ostringstream name;
  name << "criterion 7: oracle equivalence on " << analyzed
       << " random small curves" << why;
  verdict(ok, name.str());
}

// paper-worked 12-degree example: the comparison-step values
static void worked_example() {
  bool ok = true;
  std::string why;
  try {
    RunConfig cfg = desk_config(100, 5);
    ExactPoly f = parse_poly(read_fixture("deg12.txt"));
    SingularList list = singular_list(f, 100, cfg);
    ok &= list.total() == 3;
    ExpansionSet base = expand_at(f, list.at(1).location, 256, cfg);
    ok &= is_effective_zero(list.at(1).location);
    ok &= base.classes.size() == 3;

    // the walk step at s_2: twelve branch values on its perimeter
    const SingularPoint& s2 = list.at(2);
    ExpansionSet at2 = expand_at(f, s2.location, 128, cfg);
    ComplexBall diff = cb_sub(base.center, s2.location);
    RealBall dist = cb_abs(diff);
    ComplexBall unit{rb_div(diff.re, dist), rb_div(diff.im, dist)};
    ComplexBall D = cb_add(
        s2.location, cb_mul(unit, ComplexBall::from_doubles(s2.perimeter, 0, 100)));
    std::vector<ComplexBall> u;
    for (auto& s : at2.series)
      u.push_back(evaluate_series(s, cb_sub(D, s2.location), s.terms()));
    ok &= u.size() == 12;
    double s_t = separation_tolerance(u, cfg.separation_factor);
    // the printed table's minimum separation is 0.399, a tenth of which
    // is the matching threshold
    ok &= s_t > 0.03 && s_t < 0.05;

    // the published twelve sheet values at D
    const double table[12][2] = {
        {-2.44964, -1.22342},   {-1.0006, 1.0348},     {-0.92827, -0.314806},
        {-0.783318, 0.21872},   {-0.696357, -0.639337},{-0.371485, -0.178941},
        {0.371485, 0.178941},   {0.696357, 0.639337},  {0.783318, -0.21872},
        {0.92827, 0.314806},    {1.0006, -1.0348},     {2.44964, 1.22342}};
    int matched = 0;
    for (auto& row : table) {
      for (auto& v : u)
        if (std::abs(v.re.to_double() - row[0]) < 2e-4 &&
            std::abs(v.im.to_double() - row[1]) < 2e-4) {
          ++matched;
          break;
        }
    }
    ok &= matched == 12;

    // base series 1 lands on the third table entry
    ComplexBall zr_b = cb_sub(D, base.center);
    double best = HUGE_VAL;
    for (auto& s : base.series) {
      ComplexBall v = evaluate_series(s, zr_b, s.terms());
      double d = std::hypot(v.re.to_double() + 0.92827,
                            v.im.to_double() + 0.314806);
      best = std::min(best, d);
    }
    ok &= best < 2e-4;
  } catch (const std::exception& e) {
    ok = false;
    why = std::string(" (") + e.what() + ")";
  }
  verdict(ok, "worked example: 12-degree comparison step at s_2" + why);
}

int main() {
  criterion1();
  criteria_2_3_4();
  criterion5();
  criterion6();
  criterion7();
  worked_example();
  if (failures == 0)
    std::printf("acceptance: all criteria passed\n");
  else
    std::printf("acceptance: %d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
