#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "algfun/accuracy.hpp"
#include "algfun/convergence.hpp"
#include "algfun/geometry.hpp"

namespace algfun {

enum class Format { human, csv, json };

Format parse_format(const std::string& s);

// value formatting used by every report: 6 significant digits for humans,
// 17 for machine formats
std::string fmt_double(double v, Format f);
std::string location_str(const ComplexBall& b, Format f);

void report_singular_list(std::ostream& os, const SingularList& list, Format f);

void report_expansion(std::ostream& os, const ExpansionSet& set, Format f,
                      int dump_terms);

struct SummaryRow {
  std::string type;
  std::string clsp;  // index or "-"
  std::string r;     // numeric, "inf", or lower bound
  long terms = 0;
  std::optional<AccuracyModel> model;
};

void report_summary(std::ostream& os, const std::vector<SummaryRow>& rows, Format f);

void report_ramification(std::ostream& os, const RamificationProfile& prof,
                         const GenusReport& genus, Format f);

void report_root_tests(std::ostream& os, const std::vector<RootTestEstimate>& est,
                       const std::vector<ConvergenceResult>& classes, Format f);

// plot data (CSV only by design)
void emit_accuracy_samples(std::ostream& os, const std::vector<AccuracySample>& s);
void emit_precision_profile(std::ostream& os, const PuiseuxSeries& p);

// sparse coefficient map with exact rationals as "p/q" strings
std::string poly_json(const ExactPoly& f);

}  // namespace algfun
