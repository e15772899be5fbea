#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>

#include "algfun/poly.hpp"
#include "oracles.hpp"

using namespace algfun;

static std::string read_fixture(const char* name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
  REQUIRE(in.good());
  std::string s, line;
  while (std::getline(in, line)) s += line;
  return s;
}

TEST_CASE("parser on basic forms") {
  ExactPoly p = parse_poly("w^2 - z");
  CHECK(p.terms.size() == 2);
  CHECK(p.terms.at({0, 2}) == GaussianRational::integer(1));
  CHECK(p.terms.at({1, 0}) == GaussianRational::integer(-1));

  ExactPoly q = parse_poly("(2/3+i/4) + w");
  CHECK(q.terms.at({0, 0}) ==
        GaussianRational{mpq_class(2, 3), mpq_class(1, 4)});

  ExactPoly f2 = parse_poly(read_fixture("tc2.txt"));
  CHECK(f2.w_degree() == 4);
  ExactUniPoly a0 = f2.w_coefficient(0);
  CHECK(a0.degree() == 3);
  CHECK(a0.c[0] == GaussianRational::integer(1));
  CHECK(a0.c[1] == GaussianRational::integer(-3));
  CHECK(a0.c[2] == GaussianRational::integer(3));
  CHECK(a0.c[3] == GaussianRational::integer(-1));
}

TEST_CASE("parser rejections") {
  CHECK_THROWS_AS(parse_poly("w^-2"), Error);
  CHECK_THROWS_AS(parse_poly("1/z + w"), Error);
  CHECK_THROWS_AS(parse_poly("w - w"), Error);   // zero polynomial
  CHECK_THROWS_AS(parse_poly("z^2 + 1"), Error); // w-degree 0
  try {
    parse_poly("w + q");
  } catch (const Error& e) {
    CHECK(e.kind == Fail::parse);
    CHECK(std::string(e.what()).find("position") != std::string::npos);
  }
}

TEST_CASE("resultant on pinned cases") {
  ExactPoly f = parse_poly("w^2 - z");
  ExactPoly g = parse_poly("2*w");
  ExactUniPoly r = resultant_w(f, g);
  CHECK(r.degree() == 1);
  CHECK(r.c[1] == GaussianRational::integer(-4));
  CHECK(r.c[0].is_zero());

  ExactPoly h = parse_poly("w - z");
  ExactPoly one_w = parse_poly("w");  // build constant 1 via w_coefficient trick
  ExactPoly one;
  one.add_term(0, 0, GaussianRational::integer(1));
  ExactUniPoly rc = resultant_w(h, one);
  CHECK(rc.degree() == 0);
  CHECK(!rc.c[0].is_zero());
}

TEST_CASE("resultant of the quartic test function vanishes exactly at 0 and 1") {
  ExactPoly f2 = parse_poly(read_fixture("tc2.txt"));
  ExactUniPoly r = resultant_w(f2, f2.derivative_w());
  CHECK(r.degree() >= 2);
  CHECK(r.eval(GaussianRational::integer(0)).is_zero());
  CHECK(r.eval(GaussianRational::integer(1)).is_zero());
  CHECK(!r.eval(GaussianRational::integer(2)).is_zero());
  CHECK(!r.eval(GaussianRational::ratio(1, 2)).is_zero());
}

TEST_CASE("resultant equals the Sylvester determinant on random small inputs") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int trial = 0; trial < 12; ++trial) {
    ExactPoly f, g;
    for (int zp = 0; zp <= 2; ++zp)
      for (int wp = 0; wp <= 3; ++wp) {
        int c = coef(rng);
        if (c) f.add_term(zp, wp, GaussianRational::integer(c));
        int d = coef(rng);
        if (d) g.add_term(zp, wp, GaussianRational::integer(d));
      }
    f.add_term(0, 3, GaussianRational::integer(1));
    g.add_term(0, 2, GaussianRational::integer(1));
    ExactPoly g2;
    for (auto& [k, v] : g.terms)
      if (k.second <= 2) g2.add_term(k.first, k.second, v);
    ExactUniPoly got = resultant_w(f, g2);
    ExactUniPoly want = oracle::sylvester_resultant(f, g2);
    ExactUniPoly diff = got - want;
    CHECK(diff.is_zero());
  }
}

TEST_CASE("resultant flags non-squarefree input as identically zero") {
  ExactPoly f = parse_poly("(w - z)*(w - z)");
  ExactUniPoly r = resultant_w(f, f.derivative_w());
  CHECK(r.is_zero());
}

TEST_CASE("resultant vanishes where constructed sheets collide") {
  // f = (w - z)(w - 2z + 1): sheets collide where z = 2z - 1, i.e. z = 1
  ExactPoly f = parse_poly("(w - z)*(w - 2*z + 1)");
  ExactUniPoly r = resultant_w(f, f.derivative_w());
  CHECK(r.eval(GaussianRational::integer(1)).is_zero());
  CHECK(!r.eval(GaussianRational::integer(0)).is_zero());
}

TEST_CASE("translate_z basics and audit") {
  RunConfig cfg;
  cfg.working_digits = 100;
  ExactPoly f = parse_poly("w^2 - z");
  ComplexBall s = ComplexBall::exact_long(1, 100);
  FractionalPoly t = translate_z(f, s, cfg);
  // w^2 - z - 1
  REQUIRE(t.terms.size() == 3);
  CHECK(t.terms[0].wp == 0);
  CHECK(t.terms[0].coeff.re.to_double() == doctest::Approx(-1.0));
  CHECK(t.terms[1].coeff.re.to_double() == doctest::Approx(-1.0));
  CHECK(t.terms[2].wp == 2);

  // quartic test function shifted to its singular point at 1: the w-constant
  // column collapses to -z^3 and the cancelled positions are audited
  ExactPoly f2 = parse_poly(read_fixture("tc2.txt"));
  ComplexBall s1 = ComplexBall::exact_long(1, 100);
  s1.re.rad = Mag::from_pow10(-95);  // realistic root ball
  StripReport rep;
  FractionalPoly t2 = translate_z(f2, s1, cfg, &rep);
  int w0_terms = 0;
  for (auto& term : t2.terms)
    if (term.wp == 0) {
      ++w0_terms;
      CHECK(term.ze == Frac(3));
      CHECK(term.coeff.re.to_double() == doctest::Approx(-1.0));
    }
  CHECK(w0_terms == 1);
  bool audited00 = false, audited10 = false, audited20 = false;
  for (auto& [ze, wp] : rep.removed) {
    if (wp == 0 && ze == Frac(0)) audited00 = true;
    if (wp == 0 && ze == Frac(1)) audited10 = true;
    if (wp == 0 && ze == Frac(2)) audited20 = true;
  }
  CHECK(audited00);
  CHECK(audited10);
  CHECK(audited20);

  // exact check against exact translation
  ExactPoly exact_shift = f2.translate_exact(GaussianRational::integer(1));
  for (auto& term : t2.terms) {
    auto it = exact_shift.terms.find({(int)term.ze.num, term.wp});
    REQUIRE(it != exact_shift.terms.end());
    ComplexBall diff = cb_sub(term.coeff, it->second.to_ball(100));
    CHECK(is_effective_zero(diff));
  }
}

TEST_CASE("tiny translations keep small high-order coefficients") {
  RunConfig cfg;
  cfg.working_digits = 1000;
  ExactPoly f = parse_poly("z^50 + w");
  ComplexBall s = GaussianRational::ratio(1, 1000).to_ball(1000);
  FractionalPoly t = translate_z(f, s, cfg);
  bool found = false;
  for (auto& term : t.terms)
    if (term.wp == 0 && term.ze == Frac(0)) {
      found = true;
      // (1/1000)^50 = 1e-150
      CHECK(term.coeff.log2_abs() == doctest::Approx(-150.0 * 3.321928).epsilon(1e-6));
      CHECK(effective_precision(term.coeff) > 800);
    }
  CHECK(found);
}

TEST_CASE("translation round-trip returns the original within radii") {
  RunConfig cfg;
  cfg.working_digits = 80;
  ExactPoly f = parse_poly("(1+z)*w^3 - (2+z^2)*w + z");
  ComplexBall s = ComplexBall::from_doubles(0.375, -1.25, 80);
  FractionalPoly once = translate_z(f, s, cfg);
  FractionalPoly back = translate_z(once, cb_neg(s), cfg);
  FractionalPoly orig = FractionalPoly::from_exact(f, 80);
  REQUIRE(back.terms.size() == orig.terms.size());
  for (size_t i = 0; i < back.terms.size(); ++i) {
    CHECK(back.terms[i].ze == orig.terms[i].ze);
    CHECK(back.terms[i].wp == orig.terms[i].wp);
    CHECK(is_effective_zero(cb_sub(back.terms[i].coeff, orig.terms[i].coeff)));
  }
}

TEST_CASE("infinity transform") {
  ExactPoly f = parse_poly("w^2 - z");
  ExactPoly g = f.infinity_transform();
  CHECK(g.terms.at({1, 2}) == GaussianRational::integer(1));
  CHECK(g.terms.at({0, 0}) == GaussianRational::integer(-1));

  ExactPoly noz = parse_poly("w^3 - 2*w + 1");
  ExactPoly same = noz.infinity_transform();
  CHECK(same.terms == noz.terms);

  // degree-35 case: delta = 2, printout pinned from the source table
  ExactPoly f4 = parse_poly(read_fixture("tc4.txt"));
  CHECK(f4.z_degree() == 2);
  ExactPoly g4 = f4.infinity_transform();
  ExactPoly g4_expected = parse_poly(
      "(1/4 + 179/30*z - 31/10*z^2) + (-7/4*z^2)*w^2 + (4*z^2)*w^3 + "
      "(-5/2*z - 1/2*z^2)*w^8 + (11/3*z^2)*w^10 + (5/2*z + 6*z^2)*w^14 + "
      "(5*z^2)*w^18 + (-64/15*z^2)*w^20 + (-1/2 + 11/2*z^2)*w^22 + "
      "(7/3*z - 9/2*z^2)*w^25 + (-3/4 + 18/5*z^2)*w^28 + (-z - 3/2*z^2)*w^33 + "
      "(-8/3*z^2)*w^35");
  CHECK(g4.terms == g4_expected.terms);

  // applying the transform twice recovers f up to a monomial factor in z
  ExactPoly twice = g4.infinity_transform();
  int shift = -1;
  for (auto& [k, v] : twice.terms) {
    auto it0 = f4.terms.lower_bound({0, 0});
    (void)it0;
    break;
  }
  // compare term sets: twice == z^k * f4 for some k >= 0
  auto tit = twice.terms.begin();
  auto fit = f4.terms.begin();
  REQUIRE(twice.terms.size() == f4.terms.size());
  shift = tit->first.first - fit->first.first;
  for (; tit != twice.terms.end(); ++tit, ++fit) {
    CHECK(tit->first.first - fit->first.first == shift);
    CHECK(tit->first.second == fit->first.second);
    CHECK(tit->second == fit->second);
  }
}

TEST_CASE("strip_coefficient_zeros") {
  RunConfig cfg;
  cfg.working_digits = 1000;
  FractionalPoly p;
  p.digits = 1000;
  ComplexBall residue = ComplexBall::from_doubles(0, 0, 1000);
  mpfr_set_str(residue.re.mid.raw(), "1e-990", 10, MPFR_RNDN);
  residue.re.rad = Mag::from_pow10(-980);
  p.terms.push_back({Frac(0), 0, residue});
  p.terms.push_back({Frac(0), 1, GaussianRational::ratio(1, 1).to_ball(1000)});
  ComplexBall small = GaussianRational::integer(1).to_ball(1000);
  mpfr_set_str(small.re.mid.raw(), "1e-150", 10, MPFR_RNDN);
  p.terms.push_back({Frac(1), 2, small});
  p.sort_terms();

  StripReport rep = strip_coefficient_zeros(p, cfg);
  CHECK(rep.removed.size() == 1);
  CHECK(p.terms.size() == 2);  // the exact 1e-150 midpoint survives

  StripReport rep2 = strip_coefficient_zeros(p, cfg);
  CHECK(rep2.removed.empty());  // idempotent
}

TEST_CASE("fractional poly substitution and evaluation") {
  RunConfig cfg;
  cfg.working_digits = 60;
  ExactPoly f = parse_poly("w^2 - z");
  FractionalPoly p = FractionalPoly::from_exact(f, 60);
  // w -> z^(1/2) (w + 1): z w^2 + 2 z w + z - z = z w^2 + 2 z w
  FractionalPoly q = p.substitute_w(Frac(1, 2), ComplexBall::exact_long(1, 60));
  strip_coefficient_zeros(q, cfg);
  REQUIRE(q.terms.size() == 2);
  CHECK(q.terms[0].wp == 1);
  CHECK(q.terms[0].ze == Frac(1));
  CHECK(q.terms[0].coeff.re.to_double() == doctest::Approx(2.0));
  CHECK(q.terms[1].wp == 2);
  CHECK(q.terms[1].ze == Frac(1));

  ComplexBall z = ComplexBall::from_doubles(0.25, 0, 60);
  ComplexBall w = ComplexBall::from_doubles(0.5, 0, 60);
  ComplexBall v = p.eval(z, w);
  CHECK(is_effective_zero(v));
}
