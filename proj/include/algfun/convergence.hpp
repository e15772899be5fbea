#pragma once

#include <map>
#include <string>
#include <vector>

#include "algfun/puiseux.hpp"
#include "algfun/singular.hpp"

namespace algfun {

// dense numeric rendering of an exact bivariate polynomial, for fast
// evaluation of f, f_z, f_w at integration precision
struct BivariateNumeric {
  std::vector<std::vector<BigComplex>> rows;  // [w-power][z-power]
  mpfr_prec_t prec = 64;

  static BivariateNumeric render(const ExactPoly& f, long digits);
  BigComplex eval(const BigComplex& z, const BigComplex& w) const;
  BigComplex eval_dw(const BigComplex& z, const BigComplex& w) const;
  BigComplex eval_dz(const BigComplex& z, const BigComplex& w) const;
};

struct RootTestEstimate {
  bool infinite = false;  // finite polynomial solution
  int curve_kind = 0;     // 1 linear, 2 quadratic, 3 cubic
  double r_estimate = 0.0;
  int nearest_index = 0;  // estimated CLSP (singular list index), 0 if none
  std::vector<std::pair<double, double>> points;  // (1/m, |a|^(-c/m))
};

RootTestEstimate root_test_estimate(const PuiseuxSeries& p,
                                    const SingularList& list,
                                    const ComplexBall& base,
                                    const RunConfig& cfg);

// s_f times the minimum pairwise distance of the values
double separation_tolerance(const std::vector<ComplexBall>& values, double s_f);

struct Blocker {
  BigComplex center;
  double radius = 0.0;
};

// integrates dw/dt = -(f_z/f_w) dz/dt for each sheet value along the
// straight segment, detouring around blockers on half-perimeter arcs;
// pieces (if given) reports how many path pieces were used
std::vector<BigComplex> integrate_continuation(const BivariateNumeric& f,
                                               const BigComplex& from,
                                               const BigComplex& to,
                                               const std::vector<BigComplex>& values,
                                               const std::vector<Blocker>& avoid,
                                               const RunConfig& cfg,
                                               int* pieces = nullptr);

struct ConvergenceResult {
  int class_index = 0;
  BranchType type;
  long long cycle = 1;
  long terms = 0;
  bool infinite = false;  // R = oo (finite polynomial)
  bool resolved = false;
  int clsp_index = 0;
  double radius = 0.0;
  double lower_bound = 0.0;  // when unresolved
  std::string method;        // comparison | integration | inspection
};

// lazily computed expansions at comparison-sequence points
struct ExpansionCache {
  const ExactPoly* f = nullptr;
  RunConfig cfg;
  long terms = 128;
  std::map<int, ExpansionSet> memo;

  const ExpansionSet& at(const SingularList& list, int index);
};

struct WalkReport {
  std::vector<ConvergenceResult> classes;
  std::vector<RootTestEstimate> estimates;
  std::vector<int> plan;
};

// CLSPs and radii of convergence for every class of the base expansion
WalkReport find_clsps(const ExactPoly& f, const SingularList& list,
                      int base_index, const ExpansionSet& base,
                      ExpansionCache& cache, const RunConfig& cfg);

}  // namespace algfun
