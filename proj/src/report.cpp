#include "algfun/report.hpp"

#include <json.hpp>

#include <iomanip>
#include <sstream>

namespace algfun {

using nlohmann::json;

Format parse_format(const std::string& s) {
  if (s == "human") return Format::human;
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw Error(Fail::parse, "unknown format '" + s + "'");
}

std::string fmt_double(double v, Format f) {
  char buf[64];
  if (f == Format::human)
    snprintf(buf, sizeof buf, "%.6g", v);
  else
    snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string location_str(const ComplexBall& b, Format f) {
  int digits = f == Format::human ? 6 : 25;
  return cb_str(b, digits);
}

void report_singular_list(std::ostream& os, const SingularList& list, Format f) {
  if (f == Format::json) {
    json arr = json::array();
    for (auto& p : list.points) {
      arr.push_back({{"index", p.index},
                     {"re", rb_str(p.location.re, 25)},
                     {"im", rb_str(p.location.im, 25)},
                     {"abs", p.abs_location},
                     {"pole", p.is_pole},
                     {"qset", p.is_qset},
                     {"perimeter", p.perimeter}});
    }
    os << json{{"total", list.total()}, {"points", arr}}.dump(2) << "\n";
    return;
  }
  if (f == Format::csv) {
    os << "index,re,im,abs,pole,qset,perimeter\n";
    for (auto& p : list.points)
      os << p.index << "," << rb_str(p.location.re, 25) << ","
         << rb_str(p.location.im, 25) << "," << fmt_double(p.abs_location, f)
         << "," << (p.is_pole ? 1 : 0) << "," << (p.is_qset ? 1 : 0) << ","
         << fmt_double(p.perimeter, f) << "\n";
    return;
  }
  os << "singular points: " << list.total() << "\n";
  os << std::left << std::setw(6) << "index" << std::setw(28) << "location"
     << std::setw(12) << "|s|" << std::setw(6) << "pole" << std::setw(6) << "qset"
     << "perimeter\n";
  for (auto& p : list.points) {
    os << std::left << std::setw(6) << p.index << std::setw(28)
       << location_str(p.location, f) << std::setw(12)
       << fmt_double(p.abs_location, f) << std::setw(6) << (p.is_pole ? "p" : "")
       << std::setw(6) << (p.is_qset ? "q" : "") << fmt_double(p.perimeter, f)
       << "\n";
  }
}

void report_expansion(std::ostream& os, const ExpansionSet& set, Format f,
                      int dump_terms) {
  if (f == Format::json) {
    json arr = json::array();
    for (size_t k = 0; k < set.classes.size(); ++k) {
      const ConjugateClass& cls = set.classes[k];
      const PuiseuxSeries& gen = set.generator(k);
      json terms = json::array();
      size_t n = dump_terms > 0 ? std::min<size_t>(dump_terms, gen.terms())
                                : gen.terms();
      for (size_t t = 0; t < n; ++t)
        terms.push_back({{"m", gen.expnum[t]},
                         {"re", rb_str(gen.coeff[t].re, 25)},
                         {"im", rb_str(gen.coeff[t].im, 25)},
                         {"rad", gen.coeff[t].rad_max().str()}});
      json members = json::array();
      for (int m : cls.members) members.push_back(m + 1);
      arr.push_back({{"type", cls.type.str()},
                     {"cycle", cls.cycle},
                     {"finite", cls.finite},
                     {"members", members},
                     {"generator_terms", gen.terms()},
                     {"series", terms}});
    }
    os << json{{"degree", set.degree}, {"classes", arr}}.dump(2) << "\n";
    return;
  }
  // class table
  os << (f == Format::csv ? "class,type,cycle,finite,members,terms\n" : "");
  if (f == Format::human)
    os << "classes: " << set.classes.size() << " (degree " << set.degree << ")\n"
       << std::left << std::setw(7) << "class" << std::setw(9) << "type"
       << std::setw(7) << "cycle" << std::setw(8) << "finite" << std::setw(16)
       << "members" << "terms\n";
  for (size_t k = 0; k < set.classes.size(); ++k) {
    const ConjugateClass& cls = set.classes[k];
    std::ostringstream mem;
    for (size_t i = 0; i < cls.members.size(); ++i)
      mem << (i ? " " : "") << cls.members[i] + 1;
    if (f == Format::csv)
      os << k + 1 << "," << cls.type.str() << "," << cls.cycle << ","
         << (cls.finite ? 1 : 0) << "," << mem.str() << ","
         << set.generator(k).terms() << "\n";
    else
      os << std::left << std::setw(7) << k + 1 << std::setw(9) << cls.type.str()
         << std::setw(7) << cls.cycle << std::setw(8) << (cls.finite ? "yes" : "")
         << std::setw(16) << mem.str() << set.generator(k).terms() << "\n";
  }
  if (f == Format::human) {
    for (size_t k = 0; k < set.classes.size(); ++k) {
      const PuiseuxSeries& gen = set.generator(k);
      os << "\ngenerator of class " << k + 1 << " (m/c  re  im  radius):\n";
      size_t n = dump_terms > 0 ? std::min<size_t>(dump_terms, gen.terms())
                                : gen.terms();
      for (size_t t = 0; t < n; ++t)
        os << gen.expnum[t] << "/" << gen.cycle << "\t"
           << rb_str(gen.coeff[t].re, 6) << "\t" << rb_str(gen.coeff[t].im, 6)
           << "\t" << gen.coeff[t].rad_max().str() << "\n";
      if (n < gen.terms())
        os << "... (" << gen.terms() - n << " more terms)\n";
    }
  }
}

void report_summary(std::ostream& os, const std::vector<SummaryRow>& rows,
                    Format f) {
  if (f == Format::json) {
    json arr = json::array();
    for (auto& r : rows) {
      json row{{"type", r.type}, {"clsp", r.clsp}, {"R", r.r}, {"terms", r.terms}};
      if (r.model) {
        row["a"] = r.model->a;
        row["b"] = r.model->b;
        row["c"] = r.model->c;
        row["d"] = r.model->d;
        row["var"] = r.model->variance;
      }
      arr.push_back(row);
    }
    os << json{{"rows", arr}}.dump(2) << "\n";
    return;
  }
  if (f == Format::csv) {
    os << "type,clsp,R,terms,a,b,c,d,var\n";
    for (auto& r : rows) {
      os << r.type << "," << r.clsp << "," << r.r << "," << r.terms;
      if (r.model)
        os << "," << fmt_double(r.model->a, f) << "," << fmt_double(r.model->b, f)
           << "," << fmt_double(r.model->c, f) << "," << fmt_double(r.model->d, f)
           << "," << fmt_double(r.model->variance, f);
      else
        os << ",,,,,";
      os << "\n";
    }
    return;
  }
  os << std::left << std::setw(9) << "Type" << std::setw(7) << "CLSP"
     << std::setw(13) << "R" << std::setw(7) << "Terms" << std::setw(11) << "a"
     << std::setw(12) << "b" << std::setw(12) << "c" << std::setw(12) << "d"
     << "Var\n";
  for (auto& r : rows) {
    os << std::left << std::setw(9) << r.type << std::setw(7) << r.clsp
       << std::setw(13) << r.r << std::setw(7) << r.terms;
    if (r.model)
      os << std::setw(11) << fmt_double(r.model->a, f) << std::setw(12)
         << fmt_double(r.model->b, f) << std::setw(12) << fmt_double(r.model->c, f)
         << std::setw(12) << fmt_double(r.model->d, f)
         << fmt_double(r.model->variance, f);
    else
      os << "-";
    os << "\n";
  }
}

void report_ramification(std::ostream& os, const RamificationProfile& prof,
                         const GenusReport& genus, Format f) {
  auto name = [](const PointProfile& p) {
    return p.index == 0 ? std::string("inf") : std::to_string(p.index);
  };
  if (f == Format::json) {
    json arr = json::array();
    for (auto& p : prof.points)
      arr.push_back({{"point", name(p)}, {"cycles", p.cycles}});
    os << json{{"degree", prof.degree},
               {"K", genus.K},
               {"genus", genus.G},
               {"points", arr}}
              .dump(2)
       << "\n";
    return;
  }
  if (f == Format::csv) {
    os << "point,cycles\n";
    for (auto& p : prof.points)
      os << name(p) << "," << profile_str(p.cycles) << "\n";
    os << "K," << genus.K << "\n";
    os << "genus," << genus.G << "\n";
    return;
  }
  // group identical profiles of minimally interesting points
  os << "ramification profile (degree " << prof.degree << ", K = " << genus.K
     << ", genus = " << genus.G << ")\n";
  std::map<std::string, std::vector<std::string>> grouped;
  std::vector<std::string> order;
  for (auto& p : prof.points) {
    std::string key = profile_str(p.cycles);
    if (!grouped.count(key)) order.push_back(key);
    grouped[key].push_back(name(p));
  }
  for (auto& key : order) {
    auto& pts = grouped[key];
    if (pts.size() <= 4) {
      for (auto& pt : pts)
        os << "  s_" << pt << "  " << key << "\n";
    } else {
      os << "  {" << pts.size() << " points}  " << key << "\n";
    }
  }
}

void report_root_tests(std::ostream& os, const std::vector<RootTestEstimate>& est,
                       const std::vector<ConvergenceResult>& classes, Format f) {
  if (f == Format::json) {
    json arr = json::array();
    for (size_t k = 0; k < est.size(); ++k)
      arr.push_back({{"class", k + 1},
                     {"infinite", est[k].infinite},
                     {"est_R", est[k].r_estimate},
                     {"est_clsp", est[k].nearest_index},
                     {"curve", est[k].curve_kind}});
    os << json{{"estimates", arr}}.dump(2) << "\n";
    return;
  }
  if (f == Format::csv) {
    os << "class,type,cycle,est_R,est_clsp,curve\n";
    for (size_t k = 0; k < est.size(); ++k)
      os << k + 1 << "," << classes[k].type.str() << "," << classes[k].cycle << ","
         << (est[k].infinite ? std::string("inf")
                             : fmt_double(est[k].r_estimate, f))
         << "," << est[k].nearest_index << "," << est[k].curve_kind << "\n";
    return;
  }
  os << std::left << std::setw(7) << "class" << std::setw(9) << "type"
     << std::setw(7) << "cycle" << std::setw(12) << "est. R" << std::setw(10)
     << "est. CLSP" << "curve\n";
  for (size_t k = 0; k < est.size(); ++k) {
    os << std::left << std::setw(7) << k + 1 << std::setw(9)
       << classes[k].type.str() << std::setw(7) << classes[k].cycle;
    if (est[k].infinite)
      os << std::setw(12) << "inf" << std::setw(10) << "-" << "-\n";
    else
      os << std::setw(12) << fmt_double(est[k].r_estimate, f) << std::setw(10)
         << est[k].nearest_index << est[k].curve_kind << "\n";
  }
}

void emit_accuracy_samples(std::ostream& os, const std::vector<AccuracySample>& s) {
  os << "r_f,order,angle,terms,s_a\n";
  for (auto& x : s)
    os << fmt_double(x.r_f, Format::csv) << "," << x.order << ","
       << fmt_double(x.angle, Format::csv) << "," << x.term_count << ","
       << fmt_double(x.s_a, Format::csv) << "\n";
}

void emit_precision_profile(std::ostream& os, const PuiseuxSeries& p) {
  os << "term,effective_precision\n";
  auto prof = precision_profile(p);
  for (auto& [idx, digits] : prof) os << idx << "," << digits << "\n";
}

std::string poly_json(const ExactPoly& f) {
  json terms = json::array();
  for (auto& [k, v] : f.terms) {
    json t{{"z", k.first}, {"w", k.second}, {"re", v.re.get_str()}};
    if (v.im != 0) t["im"] = v.im.get_str();
    terms.push_back(t);
  }
  return json{{"w_degree", f.w_degree()},
              {"z_degree", f.z_degree()},
              {"terms", terms}}
      .dump();
}

}  // namespace algfun
