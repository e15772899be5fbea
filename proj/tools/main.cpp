#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "algfun/report.hpp"

using namespace algfun;

namespace {

struct CommonOpts {
  std::string input_file;
  std::string poly_text;
  std::string center = "origin";
  std::string format = "human";
  std::string output;
  std::string method = "both";
  RunConfig cfg;
  long terms = 0;  // 0: use cfg defaults per command
};

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v ? std::string(v) : fallback;
}

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--input,-i", o.input_file, "polynomial file");
  cmd->add_option("--poly,-p", o.poly_text, "polynomial text");
  cmd->add_option("--format,-f", o.format, "human|csv|json");
  cmd->add_option("--output,-o", o.output, "write the report to a file");
  cmd->add_option("--precision", o.cfg.working_digits, "working precision, digits");
  cmd->add_option("--floor", o.cfg.precision_floor,
                  "halt when series precision drops below this many digits");
  cmd->add_option("--base-terms", o.cfg.base_terms, "base expansion length");
  cmd->add_option("--comparison-terms", o.cfg.comparison_terms,
                  "comparison expansion length");
  cmd->add_option("--nzm", o.cfg.n_zm, "zero modular increments before a series "
                                       "is declared polynomial");
  cmd->add_option("--perimeter-factor", o.cfg.perimeter_factor,
                  "singular perimeter as a fraction of the nearest distance");
  cmd->add_option("--separation-factor", o.cfg.separation_factor,
                  "matching tolerance as a fraction of the minimum separation");
  cmd->add_option("--margin", o.cfg.comparison_margin,
                  "comparison sequence margin beyond the estimated CLSP");
  cmd->add_option("--seed", o.cfg.seed, "random seed for sampling");
  cmd->add_option("--method", o.method, "comparison|integration|both");
  cmd->add_option("--threads", o.cfg.threads, "parallelism cap (0: all cores)");
  cmd->add_option("--rt", o.cfg.residual_tolerance_log10,
                  "residual tolerance digits for effective-zero tests")
      ->each([&](const std::string&) { o.cfg.residual_tolerance_set = true; });
}

void apply_env(CommonOpts& o) {
  if (auto v = env_or("ALGFUN_PRECISION", ""); !v.empty())
    o.cfg.working_digits = std::stol(v);
  if (auto v = env_or("ALGFUN_FLOOR", ""); !v.empty())
    o.cfg.precision_floor = std::stol(v);
  if (auto v = env_or("ALGFUN_BASE_TERMS", ""); !v.empty())
    o.cfg.base_terms = std::stol(v);
  if (auto v = env_or("ALGFUN_COMPARISON_TERMS", ""); !v.empty())
    o.cfg.comparison_terms = std::stol(v);
  if (auto v = env_or("ALGFUN_NZM", ""); !v.empty()) o.cfg.n_zm = std::stoi(v);
  if (auto v = env_or("ALGFUN_PERIMETER_FACTOR", ""); !v.empty())
    o.cfg.perimeter_factor = std::stod(v);
  if (auto v = env_or("ALGFUN_SEPARATION_FACTOR", ""); !v.empty())
    o.cfg.separation_factor = std::stod(v);
  if (auto v = env_or("ALGFUN_MARGIN", ""); !v.empty())
    o.cfg.comparison_margin = std::stoi(v);
  if (auto v = env_or("ALGFUN_SEED", ""); !v.empty()) o.cfg.seed = std::stoull(v);
  if (auto v = env_or("ALGFUN_METHOD", ""); !v.empty()) o.method = v;
  if (auto v = env_or("ALGFUN_THREADS", ""); !v.empty())
    o.cfg.threads = std::stoi(v);
  if (auto v = env_or("ALGFUN_INTEGRATION_DIGITS", ""); !v.empty())
    o.cfg.integration_digits = std::stol(v);
  if (auto v = env_or("ALGFUN_INTEGRATION_DIGITS_HI", ""); !v.empty())
    o.cfg.integration_digits_hi = std::stol(v);
  if (auto v = env_or("ALGFUN_RT", ""); !v.empty()) {
    o.cfg.residual_tolerance_log10 = std::stod(v);
    o.cfg.residual_tolerance_set = true;
  }
}

ExactPoly load_poly(const CommonOpts& o) {
  std::string text = o.poly_text;
  if (text.empty()) {
    if (o.input_file.empty())
      throw Error(Fail::parse, "no input: pass --input FILE or --poly TEXT");
    std::ifstream in(o.input_file);
    if (!in.good())
      throw Error(Fail::parse, "cannot open input file " + o.input_file);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line[0] == '#') continue;
      text += line;
    }
  }
  return parse_poly(text);
}

RunConfig finalize_cfg(CommonOpts& o) {
  if (o.method == "comparison")
    o.cfg.method = RunConfig::Method::comparison;
  else if (o.method == "integration")
    o.cfg.method = RunConfig::Method::integration;
  else if (o.method == "both")
    o.cfg.method = RunConfig::Method::both;
  else
    throw Error(Fail::parse, "unknown method '" + o.method + "'");
  return o.cfg;
}

struct Analysis {
  ExactPoly f;          // possibly transformed for the point at infinity
  bool at_infinity = false;
  ComplexBall center;
  int base_index = 0;  // 0 when the center is not in the singular list
  SingularList list;
};

// resolves origin | infinity | a singular-list index
Analysis prepare(const CommonOpts& o, const RunConfig& cfg, bool need_list) {
  Analysis a;
  ExactPoly f = load_poly(o);
  if (o.center == "infinity") {
    a.f = f.infinity_transform();
    a.at_infinity = true;
  } else {
    a.f = f;
  }
  if (need_list || (o.center != "origin" && o.center != "infinity"))
    a.list = singular_list(a.f, cfg.working_digits, cfg);

  if (o.center == "origin" || o.center == "infinity") {
    a.center = ComplexBall::exact_long(0, cfg.working_digits);
    for (auto& p : a.list.points)
      if (is_effective_zero(p.location)) a.base_index = p.index;
  } else {
    int idx = std::stoi(o.center);
    if (idx < 1 || idx > a.list.total())
      throw Error(Fail::parse, "center index out of range");
    a.base_index = idx;
    a.center = a.list.at(idx).location;
  }
  return a;
}

std::ostream& open_output(const CommonOpts& o, std::ofstream& file) {
  if (o.output.empty()) return std::cout;
  file.open(o.output);
  if (!file.good()) throw Error(Fail::parse, "cannot open output " + o.output);
  return file;
}

std::vector<SummaryRow> summary_rows(const WalkReport& walk, Format fmt,
                                     const std::vector<AccuracyModel>* models) {
  std::vector<SummaryRow> rows;
  for (size_t k = 0; k < walk.classes.size(); ++k) {
    const ConvergenceResult& r = walk.classes[k];
    SummaryRow row;
    row.type = r.type.str();
    row.terms = r.terms;
    if (r.infinite) {
      row.clsp = "-";
      row.r = "inf";
    } else if (r.resolved) {
      row.clsp = std::to_string(r.clsp_index);
      row.r = fmt_double(r.radius, fmt);
    } else {
      row.clsp = "?";
      row.r = ">" + fmt_double(r.lower_bound, fmt);
    }
    if (models && k < models->size() && (*models)[k].samples > 0)
      row.model = (*models)[k];
    rows.push_back(std::move(row));
  }
  return rows;
}

int run(int argc, char** argv) {
  CLI::App app{"analysis of algebraic functions w(z) defined by f(z,w) = 0"};
  app.require_subcommand(1);

  CommonOpts o;
  apply_env(o);

  auto* c_sing = app.add_subcommand("singular", "singular point list");
  auto* c_expand = app.add_subcommand("expand", "series expansions at a center");
  auto* c_radius = app.add_subcommand("radius", "radii of convergence (CLSPs)");
  auto* c_acc = app.add_subcommand("accuracy", "accuracy models and plot data");
  auto* c_genus = app.add_subcommand("genus", "ramification profile and genus");
  for (auto* c : {c_sing, c_expand, c_radius, c_acc, c_genus}) add_common(c, o);
  for (auto* c : {c_expand, c_radius, c_acc})
    c->add_option("--center", o.center, "origin | infinity | singular index");
  c_expand->add_option("--terms", o.terms, "series length (default base-terms)");
  int dump_terms = 12;
  c_expand->add_option("--dump-terms", dump_terms,
                       "series terms shown in human output (0: all)");
  std::string plots_dir;
  c_acc->add_option("--plots", plots_dir, "directory for CSV plot data");
  bool with_accuracy = false;
  c_radius->add_flag("--with-accuracy", with_accuracy,
                     "fit accuracy models for the summary columns");

  CLI11_PARSE(app, argc, argv);
  RunConfig cfg = finalize_cfg(o);
  Format fmt = parse_format(o.format);
  std::ofstream file;
  auto t0 = std::chrono::steady_clock::now();

  if (c_sing->parsed()) {
    Analysis a = prepare(o, cfg, true);
    report_singular_list(open_output(o, file), a.list, fmt);
  } else if (c_expand->parsed()) {
    Analysis a = prepare(o, cfg, false);
    long terms = o.terms > 0 ? o.terms : cfg.base_terms;
    ExpansionSet set = expand_at(a.f, a.center, terms, cfg);
    report_expansion(open_output(o, file), set, fmt, dump_terms);
  } else if (c_radius->parsed() || c_acc->parsed()) {
    Analysis a = prepare(o, cfg, true);
    ExpansionSet base = expand_at(a.f, a.center, cfg.base_terms, cfg);
    ExpansionCache cache;
    cache.f = &a.f;
    cache.cfg = cfg;
    cache.terms = cfg.comparison_terms;
    WalkReport walk = find_clsps(a.f, a.list, a.base_index, base, cache, cfg);
    bool unresolved = false;
    for (auto& r : walk.classes)
      if (!r.resolved) unresolved = true;

    std::vector<AccuracyModel> models(walk.classes.size());
    if (c_acc->parsed() || with_accuracy) {
      for (size_t k = 0; k < walk.classes.size(); ++k) {
        const ConvergenceResult& r = walk.classes[k];
        if (r.infinite || !r.resolved) continue;
        auto samples = sample_accuracy(a.f, base, (int)k, r.radius, cfg);
        if (samples.size() >= 16) models[k] = fit_accuracy_model(samples);
        if (c_acc->parsed() && !plots_dir.empty()) {
          std::filesystem::create_directories(plots_dir);
          std::ofstream pf(plots_dir + "/accuracy_class" + std::to_string(k + 1) +
                           ".csv");
          emit_accuracy_samples(pf, samples);
          std::ofstream pp(plots_dir + "/precision_class" + std::to_string(k + 1) +
                           ".csv");
          emit_precision_profile(pp, base.generator(k));
        }
      }
    }
    std::ostream& os = open_output(o, file);
    report_summary(os, summary_rows(walk, fmt, &models), fmt);
    if (fmt == Format::human) {
      os << "\nroot test estimates:\n";
      report_root_tests(os, walk.estimates, walk.classes, fmt);
    }
    if (unresolved) return (int)Fail::unresolved;
  } else if (c_genus->parsed()) {
    Analysis a = prepare(o, cfg, true);
    RamificationProfile prof = ramification_profile(a.f, a.list, true, cfg);
    GenusReport genus = riemann_hurwitz(prof, a.f.w_degree());
    report_ramification(open_output(o, file), prof, genus, fmt);
  }

  auto t1 = std::chrono::steady_clock::now();
  std::cerr << "elapsed: " << std::chrono::duration<double>(t1 - t0).count()
            << "s\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return (int)e.kind;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
