#pragma once

#include <vector>

#include "algfun/roots.hpp"

namespace algfun {

struct SingularPoint {
  int index = 0;  // 1-based position in the singular list
  ComplexBall location;
  double abs_location = 0.0;
  bool is_pole = false;
  bool is_qset = false;
  double perimeter = 0.0;
};

struct SingularList {
  std::vector<SingularPoint> points;
  int total() const { return (int)points.size(); }
  const SingularPoint& at(int index1) const { return points.at(index1 - 1); }
};

// roots of the resultant of f and f_w, deduplicated, ordered by distance
// from the origin (ties: re then im ascending), tagged and given their
// singular perimeters
SingularList singular_list(const ExactPoly& f, long digits, const RunConfig& cfg);

// remaining indices ordered by distance from the base point
std::vector<int> singular_sequence(const SingularList& list, int base_index);
// same but measured from an arbitrary point (base not in the list)
std::vector<int> singular_sequence_from(const SingularList& list,
                                        const ComplexBall& base);

// prefix of the sequence reaching `margin` entries past the farthest
// estimated CLSP
std::vector<int> comparison_sequence(const std::vector<int>& seq,
                                     const SingularList& list, int base_index,
                                     const std::vector<int>& est_clsp_indices,
                                     int margin);

}  // namespace algfun
