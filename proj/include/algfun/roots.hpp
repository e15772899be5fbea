#pragma once

#include <vector>

#include "algfun/config.hpp"
#include "algfun/poly.hpp"

namespace algfun {

struct RootBall {
  ComplexBall value;
  int multiplicity = 1;
};

// All complex roots with multiplicity, refined until the effective
// precision reaches `digits` (or the input coefficients' own precision
// runs out). Deterministic ordering by (re, im).
std::vector<RootBall> roots_of_exact(const ExactUniPoly& p, long digits,
                                     const RunConfig& cfg);
std::vector<RootBall> roots_of_balls(const std::vector<ComplexBall>& coeffs,
                                     long digits, const RunConfig& cfg);

}  // namespace algfun
