#include "algfun/singular.hpp"

#include <algorithm>

namespace algfun {

namespace {

// |a - b|^2 midpoint, for deterministic distance comparisons
BigFloat dist2(const ComplexBall& a, const ComplexBall& b) {
  BigFloat dr = bf::sub(a.re.mid, b.re.mid);
  BigFloat di = bf::sub(a.im.mid, b.im.mid);
  BigFloat r(std::max(dr.prec(), di.prec()));
  mpfr_fmma(r.raw(), dr.raw(), dr.raw(), di.raw(), di.raw(), MPFR_RNDN);
  return r;
}

bool matches_root(const ComplexBall& a, const ComplexBall& b) {
  return is_effective_zero(cb_sub(a, b));
}

}  // namespace

SingularList singular_list(const ExactPoly& f, long digits, const RunConfig& cfg) {
  if (f.w_degree() < 1)
    throw Error(Fail::parse, "singular_list: w-degree must be at least 1");
  ExactUniPoly res = resultant_w(f, f.derivative_w());
  if (res.is_zero())
    throw Error(Fail::parse,
                "resultant of f and f_w is identically zero: "
                "f is not squarefree in w");

  SingularList out;
  if (res.degree() >= 1) {
    auto roots = roots_of_exact(res, digits, cfg);
    for (auto& r : roots) {
      SingularPoint p;
      p.location = r.value;
      p.abs_location = p.location.abs_double();
      out.points.push_back(std::move(p));
    }
  }

  // {p_i}: zeros of a_n.  {q_i}: zeros of a_0 when a_1 vanishes identically.
  ExactUniPoly an = f.w_coefficient(f.w_degree());
  if (an.degree() >= 1) {
    for (auto& r : roots_of_exact(an, digits, cfg)) {
      bool hit = false;
      for (auto& p : out.points)
        if (matches_root(p.location, r.value)) {
          p.is_pole = true;
          hit = true;
        }
      if (!hit)
        throw Error(Fail::checksum,
                    "pole set member missing from the singular list");
    }
  }
  ExactUniPoly a1 = f.w_coefficient(1);
  if (a1.is_zero()) {
    ExactUniPoly a0 = f.w_coefficient(0);
    if (a0.degree() >= 1) {
      for (auto& r : roots_of_exact(a0, digits, cfg)) {
        bool hit = false;
        for (auto& p : out.points)
          if (matches_root(p.location, r.value)) {
            p.is_qset = true;
            hit = true;
          }
        if (!hit)
          throw Error(Fail::checksum,
                      "q-set member missing from the singular list");
      }
    }
  }

  std::sort(out.points.begin(), out.points.end(),
            [](const SingularPoint& a, const SingularPoint& b) {
              // increasing |s|; conjugates and other ties by re then im
              BigFloat ma = cb_abs(a.location).mid, mb = cb_abs(b.location).mid;
              int c = bf::cmp(ma, mb);
              // treat as tied when the magnitudes agree to double accuracy
              double da = ma.to_double(), db = mb.to_double();
              if (c != 0 && da != db) return c < 0;
              c = bf::cmp(a.location.re.mid, b.location.re.mid);
              if (c != 0) return c < 0;
              return bf::cmp(a.location.im.mid, b.location.im.mid) < 0;
            });

  int n = out.total();
  for (int i = 0; i < n; ++i) out.points[i].index = i + 1;
  for (int i = 0; i < n; ++i) {
    double best = HUGE_VAL;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      double d =
          std::sqrt(dist2(out.points[i].location, out.points[j].location).to_double());
      best = std::min(best, d);
    }
    if (n == 1) best = std::max(1.0, out.points[i].abs_location);
    out.points[i].perimeter = best * cfg.perimeter_factor;
  }
  return out;
}

std::vector<int> singular_sequence_from(const SingularList& list,
                                        const ComplexBall& base) {
  std::vector<std::pair<BigFloat, int>> d;
  for (auto& p : list.points)
    d.emplace_back(dist2(p.location, base), p.index);
  std::sort(d.begin(), d.end(), [&](const auto& a, const auto& b) {
    int c = bf::cmp(a.first, b.first);
    if (c != 0 && a.first.to_double() != b.first.to_double()) return c < 0;
    // conjugate ties keep list order (re then im, already encoded in index)
    return a.second < b.second;
  });
  std::vector<int> out;
  for (auto& [dist, idx] : d) out.push_back(idx);
  return out;
}

std::vector<int> singular_sequence(const SingularList& list, int base_index) {
  auto seq = singular_sequence_from(list, list.at(base_index).location);
  std::vector<int> out;
  for (int idx : seq)
    if (idx != base_index) out.push_back(idx);
  return out;
}

std::vector<int> comparison_sequence(const std::vector<int>& seq,
                                     const SingularList& list, int base_index,
                                     const std::vector<int>& est_clsp_indices,
                                     int margin) {
  (void)list;
  (void)base_index;
  size_t cut = 0;
  for (int est : est_clsp_indices) {
    for (size_t i = 0; i < seq.size(); ++i)
      if (seq[i] == est) {
        cut = std::max(cut, i + 1);
        break;
      }
  }
  if (cut == 0 && !est_clsp_indices.empty()) cut = seq.size();
  size_t len = std::min(seq.size(), cut + (size_t)std::max(margin, 0));
  return std::vector<int>(seq.begin(), seq.begin() + len);
}

}  // namespace algfun
