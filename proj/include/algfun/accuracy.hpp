#pragma once

#include "algfun/convergence.hpp"

namespace algfun {

struct AccuracySample {
  double r_f = 0;
  long long order = 0;
  double angle = 0;
  long term_count = 0;
  double s_a = 0;  // accurate digits measured against the reference root
};

struct AccuracyModel {
  double a = 0, b = 0, c = 0, d = 0;
  double variance = 0;
  long samples = 0;
};

// all n roots of f(z_a, w) = 0
std::vector<ComplexBall> reference_roots(const ExactPoly& f, const ComplexBall& z_a,
                                         long digits, const RunConfig& cfg);

// the unique root within s_t of v; throws when none or several match
ComplexBall match_root(const ComplexBall& v, const std::vector<ComplexBall>& roots,
                       double s_t);

std::vector<AccuracySample> sample_accuracy(const ExactPoly& f,
                                            const ExpansionSet& base,
                                            int class_index, double R,
                                            const RunConfig& cfg,
                                            std::vector<double> r_grid = {},
                                            int order_count = 5,
                                            int per_cell = 3);

// least squares for s_a = a + b ln(r) + o (c + d ln(r))
AccuracyModel fit_accuracy_model(const std::vector<AccuracySample>& samples);

// order needed for e_a accurate digits at radius fraction r_f
long long order_for_accuracy(const AccuracyModel& m, double r_f, double e_a);

// per-term effective precision (the stored radii)
std::vector<std::pair<size_t, long>> precision_profile(const PuiseuxSeries& p);

}  // namespace algfun
