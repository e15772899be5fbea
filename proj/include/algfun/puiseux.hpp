#pragma once

#include <optional>
#include <string>
#include <vector>

#include "algfun/poly.hpp"
#include "algfun/roots.hpp"
#include "algfun/series.hpp"

namespace algfun {

// Fractional power series around an expansion center, exponents m_k/c in
// lowest joint terms. Coefficient radii double as the precision profile.
struct PuiseuxSeries {
  long long cycle = 1;
  std::vector<long long> expnum;  // strictly increasing
  std::vector<ComplexBall> coeff;
  bool finite = false;  // exact (fractional) polynomial solution
  int series_index = 0;

  size_t terms() const { return expnum.size(); }
  Frac exponent(size_t t) const { return Frac(expnum[t], cycle); }
};

enum class BranchKind { T, E, F, V, P, L };

struct BranchType {
  BranchKind kind = BranchKind::T;
  long long p = 1;
  long long q = 0;
  std::string str() const;
  bool is_analytic_onecycle() const {
    return kind == BranchKind::T || kind == BranchKind::E;
  }
};

struct ConjugateClass {
  int generator = 0;         // 0-based index into ExpansionSet::series
  std::vector<int> members;  // 0-based, |members| == cycle
  long long cycle = 1;
  BranchType type;
  bool finite = false;
};

struct ExpansionSet {
  ComplexBall center;
  FractionalPoly local;  // analyzed function translated to the center
  int degree = 0;
  std::vector<PuiseuxSeries> series;  // all n, conjugate-generated
  std::vector<ConjugateClass> classes;

  const PuiseuxSeries& generator(size_t k) const {
    return series[(size_t)classes[k].generator];
  }
  int class_of_series(int series_idx0) const;
};

// ---- Newton polygon ----

struct PolygonSegment {
  Frac lambda;  // exponent the segment contributes
  Frac beta;    // value of e + lambda*j along the segment
  int j_lo = 0, j_hi = 0;
  std::vector<ComplexBall> characteristic;  // degree j_hi - j_lo
};

struct NewtonPolygon {
  std::vector<PolygonSegment> segments;  // slopes strictly increasing in -lambda
};

// ascending_only restricts to segments with lambda > 0 (inner iterations)
NewtonPolygon newton_polygon(const FractionalPoly& f, bool ascending_only,
                             const RunConfig& cfg);

std::vector<RootBall> characteristic_roots(const PolygonSegment& seg,
                                           const RunConfig& cfg);

// z^(-beta) f(z, z^lambda (w + c)) with stripping before and after
FractionalPoly polygon_iterate(const FractionalPoly& f, const PolygonSegment& seg,
                               const ComplexBall& c, const RunConfig& cfg,
                               StripReport* report = nullptr);

// ---- polygon tree leaves (initial segments) ----

struct ChainStep {
  Frac lambda_sum;  // accumulated exponent at this level
  ComplexBall root;
};

struct ExpansionLeaf {
  std::vector<ChainStep> prefix;  // terms fixed by polygon iterations
  FractionalPoly last;            // iterate whose characteristic root is simple
  Frac lambda, beta;              // last segment
  ComplexBall w0;                 // the simple characteristic root
  Frac lambda_base;               // accumulated exponent before the last level
  bool terminated = false;        // series ended exactly at the polygon stage
  long long cycle = 1;            // structural cycle size
};

std::vector<ExpansionLeaf> initial_segments(const FractionalPoly& local,
                                            const RunConfig& cfg);

// ---- Kung-Traub style iteration ----

struct IterationLadder {
  FractionalPoly fhat;                          // z^-beta f_k(z, z^lambda w)
  std::vector<std::vector<ComplexBall>> fbar;   // [w-power][z-power], integer exponents
  long d = 1;
};

IterationLadder normalize_for_iteration(const ExpansionLeaf& leaf,
                                        const RunConfig& cfg);

struct NewtonSeriesResult {
  ser::Series coeff;  // dense in the stretched variable
  bool finite = false;
};

NewtonSeriesResult newton_iterate_series(const IterationLadder& ladder,
                                         const ComplexBall& w0, long target_terms,
                                         const RunConfig& cfg);

PuiseuxSeries back_substitute(const ExpansionLeaf& leaf, const IterationLadder& ladder,
                              const NewtonSeriesResult& tail, const RunConfig& cfg);

// expands one leaf to roughly target_terms stored terms
PuiseuxSeries expand_leaf(const ExpansionLeaf& leaf, long target_terms,
                          const RunConfig& cfg);

// ---- conjugation, classes, classification ----

PuiseuxSeries conjugate_series(const PuiseuxSeries& p, long long j, long digits);

std::vector<ConjugateClass> group_conjugate_classes(
    const std::vector<ExpansionLeaf>& leaves, const RunConfig& cfg,
    std::vector<int>* leaf_order = nullptr);

BranchType classify_branch(const PuiseuxSeries& p, const FractionalPoly& local,
                           const RunConfig& cfg);

// ---- evaluation ----

ComplexBall evaluate_series(const PuiseuxSeries& p, const ComplexBall& z_rel,
                            size_t terms);
// highest integer power reached by the first m terms
long long series_order(const PuiseuxSeries& p, size_t m);
// smallest term count whose order reaches o (clamped to the stored length)
size_t term_for_order(const PuiseuxSeries& p, long long o);
// d(series)/dz at 0 when it exists: coefficient of z^1 (or 0)
std::optional<ComplexBall> series_slope(const PuiseuxSeries& p, long digits);

// ---- drivers ----

ExpansionSet expand_local(const FractionalPoly& local, const ComplexBall& center,
                          long target_terms, const RunConfig& cfg);
ExpansionSet expand_at(const ExactPoly& f, const ComplexBall& center,
                       long target_terms, const RunConfig& cfg);

// cycle-size multiset at a center from initial segments only
std::vector<long long> cycle_profile(const FractionalPoly& local, const RunConfig& cfg);

std::string series_dump(const PuiseuxSeries& p, int digits_shown);

}  // namespace algfun
