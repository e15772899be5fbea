#pragma once

#include <map>
#include <utility>
#include <vector>

#include "algfun/config.hpp"
#include "algfun/fraction.hpp"
#include "algfun/rational.hpp"

namespace algfun {

// Dense exact univariate polynomial, c[k] * x^k.
struct ExactUniPoly {
  std::vector<GaussianRational> c;

  int degree() const;
  void trim();
  bool is_zero() const { return degree() < 0; }
  const GaussianRational& lc() const;
  ExactUniPoly derivative() const;
  GaussianRational eval(const GaussianRational& x) const;

  friend ExactUniPoly operator+(const ExactUniPoly& a, const ExactUniPoly& b);
  friend ExactUniPoly operator-(const ExactUniPoly& a, const ExactUniPoly& b);
  friend ExactUniPoly operator*(const ExactUniPoly& a, const ExactUniPoly& b);
  ExactUniPoly scaled(const GaussianRational& s) const;
};

// divides exactly; throws on nonzero remainder
ExactUniPoly divexact(const ExactUniPoly& a, const ExactUniPoly& b);
ExactUniPoly gcd_exact(ExactUniPoly a, ExactUniPoly b);
// squarefree decomposition: result[k] has the roots of multiplicity k+1
std::vector<ExactUniPoly> yun_squarefree(const ExactUniPoly& p);

// Exact bivariate polynomial, sparse over (z_power, w_power).
struct ExactPoly {
  std::map<std::pair<int, int>, GaussianRational> terms;

  void add_term(int zp, int wp, const GaussianRational& v);
  int w_degree() const;
  int z_degree() const;
  bool is_zero() const { return terms.empty(); }

  ExactPoly derivative_w() const;
  ExactPoly derivative_z() const;
  // z^delta * f(1/z, w) with delta = z_degree
  ExactPoly infinity_transform() const;
  // coefficient of w^j as a univariate polynomial in z
  ExactUniPoly w_coefficient(int j) const;
  ExactPoly translate_exact(const GaussianRational& s) const;
  GaussianRational eval(const GaussianRational& z, const GaussianRational& w) const;

  friend ExactPoly operator+(const ExactPoly& a, const ExactPoly& b);
  friend ExactPoly operator-(const ExactPoly& a, const ExactPoly& b);
  friend ExactPoly operator*(const ExactPoly& a, const ExactPoly& b);
  ExactPoly scaled(const GaussianRational& s) const;

  std::string str() const;
};

// resultant of f and g with respect to w: an exact polynomial in z equal
// to the determinant of their Sylvester matrix
ExactUniPoly resultant_w(const ExactPoly& f, const ExactPoly& g);

// Numeric polynomial in w whose z-exponents are exact rationals. Covers
// both translated integer-exponent iterates and fractional iterates.
struct FractionalPoly {
  struct Term {
    Frac ze;
    int wp;
    ComplexBall coeff;
  };
  std::vector<Term> terms;  // sorted by (wp, ze)
  long digits = 0;

  void sort_terms();
  int w_degree() const;
  int w_valuation() const;
  bool empty() const { return terms.empty(); }
  // minimal z-exponent within w-power column, or nullopt
  bool min_ze(int wp, Frac& out) const;
  long exponent_lcm() const;

  static FractionalPoly from_exact(const ExactPoly& f, long digits);

  FractionalPoly derivative_w() const;
  // w -> z^lambda * (w + c)
  FractionalPoly substitute_w(const Frac& lambda, const ComplexBall& c) const;
  FractionalPoly shift_z(const Frac& beta) const;      // multiply by z^(-beta)
  FractionalPoly stretch_z(long d) const;              // z -> z^d on exponents
  ComplexBall eval(const ComplexBall& z, const ComplexBall& w) const;

  std::string str(int digits_shown = 6) const;
};

struct StripReport {
  std::vector<std::pair<Frac, int>> removed;
};

bool coeff_is_zero(const ComplexBall& c, const RunConfig& cfg);
// removes effective-zero coefficients in place, returns removed positions
StripReport strip_coefficient_zeros(FractionalPoly& f, const RunConfig& cfg);

// f(z + s, w) with ball propagation, R1-stripped
FractionalPoly translate_z(const ExactPoly& f, const ComplexBall& s,
                           const RunConfig& cfg, StripReport* report = nullptr);
// same on a numeric polynomial with integer z-exponents
FractionalPoly translate_z(const FractionalPoly& f, const ComplexBall& s,
                           const RunConfig& cfg, StripReport* report = nullptr);

// parse error carries a position
ExactPoly parse_poly(const std::string& text);

}  // namespace algfun
