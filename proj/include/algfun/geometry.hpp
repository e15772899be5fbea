#pragma once

#include "algfun/puiseux.hpp"
#include "algfun/singular.hpp"

namespace algfun {

struct PointProfile {
  int index = 0;  // singular list index; 0 means the point at infinity
  std::vector<long long> cycles;  // descending, summing to the w-degree
};

struct RamificationProfile {
  int degree = 0;
  std::vector<PointProfile> points;
};

struct GenusReport {
  long long K = 0;  // sum of (c - 1) over all cycles at all points
  int D = 0;
  long long G = 0;
};

// cycle profiles from initial segments at every singular point, and at
// infinity when requested
RamificationProfile ramification_profile(const ExactPoly& f,
                                         const SingularList& list,
                                         bool include_infinity,
                                         const RunConfig& cfg);

GenusReport riemann_hurwitz(const RamificationProfile& profile, int degree);

// compact rendering, e.g. (5,2,[28,1])
std::string profile_str(const std::vector<long long>& cycles);

}  // namespace algfun
