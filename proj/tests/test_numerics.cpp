#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "algfun/ball.hpp"
#include "algfun/rational.hpp"

using namespace algfun;

static ComplexBall ball(double re, double im, long digits) {
  return ComplexBall::from_doubles(re, im, digits);
}

TEST_CASE("effective precision from midpoint and radius") {
  ComplexBall one = ComplexBall::exact_long(1, 1000);
  one.re.rad = Mag::from_pow10(-1000);
  CHECK(effective_precision(one) == 1000);

  ComplexBall small = ball(1e-3, 0, 1000);
  small.re.rad = Mag::from_pow10(-1003);
  CHECK(effective_precision(small) == 1000);

  ComplexBall noisy = ball(0.04, 0, 1000);
  noisy.re.rad = Mag::from_pow10(std::log10(0.05));
  CHECK(effective_precision(noisy) == 0);

  // invariant under scaling by powers of ten
  ComplexBall x = ball(3.7, -1.2, 100);
  x.re.rad = Mag::from_pow10(-40);
  x.im.rad = Mag::from_pow10(-41);
  long p0 = effective_precision(x);
  ComplexBall scaled = cb_mul(x, ComplexBall::exact_long(1000000, 100));
  long p1 = effective_precision(scaled);
  CHECK(std::abs(p0 - p1) <= 1);
}

TEST_CASE("effective zero") {
  ComplexBall z = ComplexBall::exact_long(0, 100);
  CHECK(is_effective_zero(z));

  ComplexBall tiny = ball(1e-300, 0, 1000);
  mpfr_set_str(tiny.re.mid.raw(), "1e-990", 10, MPFR_RNDN);
  tiny.re.rad = Mag::from_pow10(-980);
  CHECK(is_effective_zero(tiny));

  ComplexBall half = ball(0.5, 0, 1000);
  half.re.rad = Mag::from_pow10(-900);
  CHECK(!is_effective_zero(half));
}

TEST_CASE("with_precision rounds and grows the radius") {
  ComplexBall pi1000 = ComplexBall::exact_long(0, 1000);
  mpfr_const_pi(pi1000.re.mid.raw(), MPFR_RNDN);
  ComplexBall cut = with_precision(pi1000, 100);
  long p = effective_precision(cut);
  CHECK(p >= 98);
  CHECK(p <= 102);

  ComplexBall one = ComplexBall::exact_long(1, 200);
  ComplexBall one50 = with_precision(one, 50);
  CHECK(effective_precision(one50) >= 49);
  CHECK(effective_precision(one50) <= 51);

  // cancellation: same value at 100 digits subtracted from itself
  ComplexBall a = with_precision(ball(1.7320508, 0.5, 300), 100);
  ComplexBall d = cb_sub(a, a);
  CHECK(is_effective_zero(d));
}

TEST_CASE("ball arithmetic matches exact rationals at effective precision") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 30);
  for (int t = 0; t < 40; ++t) {
    GaussianRational a{mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng))};
    GaussianRational b{mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng))};
    a.re.canonicalize(); a.im.canonicalize();
    b.re.canonicalize(); b.im.canonicalize();
    ComplexBall ab = a.to_ball(120), bb = b.to_ball(120);
    for (int op = 0; op < 2; ++op) {
      GaussianRational ex = op ? a * b : a + b;
      ComplexBall got = op ? cb_mul(ab, bb) : cb_add(ab, bb);
      ComplexBall ref = ex.to_ball(120);
      ComplexBall diff = cb_sub(got, ref);
      CHECK(is_effective_zero(diff));
    }
  }
}

TEST_CASE("radius growth is monotone through sums and products") {
  ComplexBall a = ball(1.25, -0.5, 100);
  a.re.rad = Mag::from_pow10(-30);
  ComplexBall b = ball(2.0, 1.0, 100);
  b.im.rad = Mag::from_pow10(-35);
  ComplexBall s = cb_add(a, b);
  CHECK(!(s.re.rad < a.re.rad));
  ComplexBall p = cb_mul(a, b);
  // |b| ~ 2, so the product radius exceeds a's contribution scaled by ~2
  CHECK(!(p.rad_max() < a.re.rad));
}

TEST_CASE("division by an effective zero throws") {
  ComplexBall num = ball(1.0, 0.0, 100);
  ComplexBall den = ball(1e-40, 0.0, 100);
  den.re.rad = Mag::from_pow10(-39);
  CHECK_THROWS(cb_div(num, den));
}

TEST_CASE("principal roots and unit phases") {
  // (i)^(1/2) = e^(i pi/4)
  ComplexBall i = ball(0.0, 1.0, 100);
  ComplexBall r = cb_root(i, 2);
  double s2 = std::sqrt(0.5);
  CHECK(r.re.to_double() == doctest::Approx(s2).epsilon(1e-12));
  CHECK(r.im.to_double() == doctest::Approx(s2).epsilon(1e-12));

  // principal value keeps arguments in (-pi/c, pi/c]
  ComplexBall neg = ball(-8.0, 0.0, 100);
  ComplexBall c = cb_root(neg, 3);
  CHECK(c.re.to_double() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.im.to_double() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));

  ComplexBall w = cb_unit_phase(1, 4, 100);
  CHECK(w.re.to_double() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(w.im.to_double() == doctest::Approx(1.0).epsilon(1e-15));

  ComplexBall full = cb_unit_phase(5, 5, 100);
  CHECK(full.re.to_double() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("decimal serialization") {
  RealBall x;
  x.mid = BigFloat::from_str("1.5", bits_for_digits(50));
  x.rad = Mag::from_pow10(-20);
  std::string s = rb_str(x, 8);
  CHECK(s.substr(0, 3) == "1.5");
}
