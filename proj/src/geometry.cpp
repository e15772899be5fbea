#include "algfun/geometry.hpp"

#include <sstream>

#include "algfun/parallel.hpp"

namespace algfun {

RamificationProfile ramification_profile(const ExactPoly& f,
                                         const SingularList& list,
                                         bool include_infinity,
                                         const RunConfig& cfg) {
  RamificationProfile out;
  out.degree = f.w_degree();
  out.points.resize(list.points.size());
  parallel_for((int)list.points.size(), cfg.threads, [&](int i) {
    const SingularPoint& s = list.points[i];
    FractionalPoly local = translate_z(f, s.location, cfg);
    PointProfile p;
    p.index = s.index;
    p.cycles = cycle_profile(local, cfg);
    long long sum = 0;
    for (auto c : p.cycles) sum += c;
    if (sum != out.degree)
      throw Error(Fail::checksum,
                  "cycle profile at s_" + std::to_string(s.index) + " sums to " +
                      std::to_string(sum) + ", expected " +
                      std::to_string(out.degree));
    out.points[i] = std::move(p);
  });
  if (include_infinity) {
    ExactPoly g = f.infinity_transform();
    FractionalPoly local =
        translate_z(g, ComplexBall::exact_long(0, cfg.working_digits), cfg);
    PointProfile p;
    p.index = 0;
    p.cycles = cycle_profile(local, cfg);
    long long sum = 0;
    for (auto c : p.cycles) sum += c;
    if (sum != out.degree)
      throw Error(Fail::checksum, "cycle profile at infinity sums to " +
                                      std::to_string(sum) + ", expected " +
                                      std::to_string(out.degree));
    out.points.push_back(std::move(p));
  }
  return out;
}

GenusReport riemann_hurwitz(const RamificationProfile& profile, int degree) {
  GenusReport rep;
  rep.D = degree;
  for (auto& p : profile.points)
    for (auto c : p.cycles) rep.K += c - 1;
  if (rep.K % 2 != 0) {
    std::ostringstream os;
    os << "ramification check-sum " << rep.K
       << " is odd; per-point contributions:";
    for (auto& p : profile.points) {
      long long k = 0;
      for (auto c : p.cycles) k += c - 1;
      if (k)
        os << " s_" << (p.index == 0 ? std::string("inf") : std::to_string(p.index))
           << "=" << k;
    }
    throw Error(Fail::checksum, os.str());
  }
  rep.G = 1 + rep.K / 2 - degree;
  if (rep.G < 0)
    throw Error(Fail::checksum,
                "negative genus " + std::to_string(rep.G) +
                    ": some ramification is missing or duplicated");
  return rep;
}

std::string profile_str(const std::vector<long long>& cycles) {
  // run-length over the sorted multiset: (9,27) stay single, [13,1] groups
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (size_t i = 0; i < cycles.size();) {
    size_t j = i;
    while (j < cycles.size() && cycles[j] == cycles[i]) ++j;
    if (!first) os << ",";
    first = false;
    size_t run = j - i;
    if (run == 1)
      os << cycles[i];
    else
      os << "[" << run << "," << cycles[i] << "]";
    i = j;
  }
  os << ")";
  return os.str();
}

}  // namespace algfun
