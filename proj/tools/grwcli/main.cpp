#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "config.hpp"
#include "json_out.hpp"

#include "grw/conditions.hpp"
#include "grw/suites.hpp"

namespace {

constexpr const char* kVersion = "grwlab 0.1.0";

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int default_jobs() {
  const unsigned hc = std::thread::hardware_concurrency();
  return std::clamp(static_cast<int>(hc ? hc : 1), 1, 8);
}

std::string fmt_short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

/// CSV cell for a double: %.17g, non-finite spelled out.
std::string csv_num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c)
      width[c] = std::max(width[c], row[c].size());
  std::string out;
  auto emit = [&](const std::vector<std::string>& row) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out += row[c];
      if (c + 1 < row.size())
        out.append(width[c] - row[c].size() + 2, ' ');
    }
    out += '\n';
  };
  emit(header);
  {
    std::vector<std::string> rule(header.size());
    for (std::size_t c = 0; c < header.size(); ++c)
      rule[c] = std::string(width[c], '-');
    emit(rule);
  }
  for (const auto& row : rows) emit(row);
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw grwcli::CliError("cannot write report file: " + path);
  out << content;
}

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  std::string format;
  double tol = 0.0;  // 0 = keep config/default
  std::optional<long long> seed;
  int jobs = default_jobs();
};

// --------------------------------------------------------------- classify --

struct PointEval {
  grw::SetMembership membership;
  grw::QuasiEinsteinResult qe;
  std::vector<grw::ConditionOutcome> outcomes;
  std::string error;
};

double tol_for(const grwcli::Scenario& sc, grw::ConditionId id) {
  const auto it = sc.tol_overrides.find(grw::condition_name(id));
  return it != sc.tol_overrides.end() ? it->second : sc.default_tol;
}

std::string membership_summary(const grw::SetMembership& m) {
  auto mark = [](bool b) { return b ? "+" : "-"; };
  return std::string("UR") + mark(m.in_UR) + " US" + mark(m.in_US) + " UC" +
         mark(m.in_UC) + " U" + mark(m.in_U) + " curlyU" + mark(m.in_curlyU) +
         " U1" + mark(m.in_U1);
}

void json_membership(grwcli::JsonWriter& w, const grw::SetMembership& m) {
  w.begin_object();
  w.kv("in_UR", m.in_UR);
  w.kv("in_US", m.in_US);
  w.kv("in_UC", m.in_UC);
  w.kv("in_U", m.in_U);
  w.kv("in_curlyU", m.in_curlyU);
  w.kv("in_U1", m.in_U1);
  w.kv("dev_UR", m.dev_UR);
  w.kv("dev_US", m.dev_US);
  w.kv("dev_UC", m.dev_UC);
  w.kv("dev_U", m.dev_U);
  w.end_object();
}

void json_quasi_einstein(grwcli::JsonWriter& w, const grw::QuasiEinsteinResult& qe) {
  w.begin_object();
  w.kv("decided", qe.decided);
  w.kv("is_einstein", qe.is_einstein);
  w.kv("is_quasi_einstein", qe.is_quasi_einstein);
  w.kv("alpha", qe.alpha);
  w.kv("rank_defect", qe.rank_defect);
  w.key("real_alphas");
  w.begin_array();
  for (double a : qe.real_alphas) w.value(a);
  w.end_array();
  w.kv("complex_pairs", qe.complex_pairs);
  w.kv("diagnostic", qe.diagnostic);
  w.end_object();
}

void json_outcome(grwcli::JsonWriter& w, const grw::ConditionOutcome& o) {
  w.begin_object();
  w.kv("id", grw::condition_name(o.id));
  w.kv("status", o.status);
  w.key("coefficients");
  w.begin_array();
  for (double c : o.coefficients) w.value(c);
  w.end_array();
  w.key("residuals");
  w.begin_array();
  for (double r : o.residuals) w.value(r);
  w.end_array();
  w.kv("holds", o.holds);
  w.kv("counts", o.counts);
  w.kv("note", o.note);
  w.end_object();
}

std::string verdict_string(bool any_fail, bool any_vacuous) {
  if (any_fail) return "fail";
  return any_vacuous ? "pass-with-vacuous" : "pass";
}

int run_classify(const CommonOpts& opt) {
  const auto t0 = Clock::now();
  grwcli::Scenario sc = grwcli::load_scenario(opt.config_path, opt.seed);
  if (opt.tol > 0.0) sc.default_tol = opt.tol;
  const std::string out_path = !opt.out_path.empty() ? opt.out_path : sc.out_path;
  std::string format = !opt.format.empty()
                           ? opt.format
                           : (!sc.out_format.empty() ? sc.out_format : "json");
  if (format != "json" && format != "csv" && format != "table")
    throw grwcli::CliError("unknown report format \"" + format + "\"");

  // fiber conditions need a scale; fail before spawning workers
  for (const grw::ConditionId id : sc.conditions) {
    if (id != grw::ConditionId::SR2 && id != grw::ConditionId::D1 &&
        id != grw::ConditionId::D3)
      continue;
    for (const grwcli::PointCase& pc : sc.points)
      if (!sc.ea2 && !pc.ea2)
        throw grwcli::CliError(
            std::string(grw::condition_name(id)) +
            " needs an ambient scale: set the top-level \"ea2\" config key");
  }

  const int n = static_cast<int>(sc.points.size());
  std::vector<PointEval> evals(sc.points.size());
  grw::parallel_for(n, opt.jobs, [&](int i) {
    const grwcli::PointCase& pc = sc.points[static_cast<std::size_t>(i)];
    PointEval& ev = evals[static_cast<std::size_t>(i)];
    try {
      ev.membership = grw::classify_sets(pc.snap, sc.default_tol);
      ev.qe = grw::quasi_einstein(pc.snap, sc.default_tol);
      const std::optional<double> ea2 = sc.ea2 ? sc.ea2 : pc.ea2;
      for (const grw::ConditionId id : sc.conditions)
        ev.outcomes.push_back(
            grw::evaluate_condition(pc.snap, id, tol_for(sc, id), ea2));
    } catch (const std::exception& e) {
      ev.error = e.what();
    }
  });
  for (std::size_t i = 0; i < evals.size(); ++i)
    if (!evals[i].error.empty())
      throw grwcli::CliError("point " + sc.points[i].label + ": " + evals[i].error);

  bool any_fail = false, any_vacuous = false;
  for (const PointEval& ev : evals) {
    for (const grw::ConditionOutcome& o : ev.outcomes) {
      if (o.counts && !o.holds) any_fail = true;
      if (!o.counts) any_vacuous = true;
    }
  }
  const std::string verdict = verdict_string(any_fail, any_vacuous);

  // human table
  std::cout << "manifold: " << sc.manifold_label << "\n";
  for (std::size_t i = 0; i < sc.points.size(); ++i) {
    const grwcli::PointCase& pc = sc.points[i];
    const PointEval& ev = evals[i];
    std::cout << pc.label << ": dim " << pc.snap.dim << ", signature ("
              << pc.snap.signature.first << "," << pc.snap.signature.second
              << "), kappa " << fmt_short(pc.snap.kappa) << ", sets ["
              << membership_summary(ev.membership) << "], einstein "
              << (ev.qe.is_einstein ? "yes" : "no") << ", quasi-einstein "
              << (ev.qe.is_quasi_einstein ? "yes" : "no") << "\n";
  }
  {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < sc.points.size(); ++i) {
      for (const grw::ConditionOutcome& o : evals[i].outcomes) {
        std::string coeffs;
        for (std::size_t c = 0; c < o.coefficients.size(); ++c)
          coeffs += (c ? "," : "") + fmt_short(o.coefficients[c]);
        double worst = 0.0;
        for (double r : o.residuals) worst = std::max(worst, r);
        rows.push_back({sc.points[i].label, grw::condition_name(o.id), o.status,
                        coeffs, o.residuals.empty() ? "" : fmt_short(worst),
                        !o.counts ? "-" : (o.holds ? "yes" : "no")});
      }
    }
    std::cout << render_table({"point", "condition", "status", "L", "residual",
                               "holds"},
                              rows);
  }
  const double wall = elapsed_ms(t0);
  std::cout << "verdict: " << verdict << "\n";
  std::cout << "wall clock: " << fmt_short(wall) << " ms\n";

  if (!out_path.empty()) {
    std::ostringstream os;
    if (format == "json") {
      grwcli::JsonWriter w(os);
      w.begin_object();
      w.kv("version", kVersion);
      w.kv("command", "classify");
      w.key("seed");
      w.value(static_cast<long long>(sc.seed));
      w.kv("default_tolerance", sc.default_tol);
      w.kv("manifold", sc.manifold_label);
      w.key("points");
      w.begin_array();
      for (std::size_t i = 0; i < sc.points.size(); ++i) {
        const grwcli::PointCase& pc = sc.points[i];
        w.begin_object();
        w.kv("label", pc.label);
        w.kv("dim", pc.snap.dim);
        w.key("signature");
        w.begin_array();
        w.value(pc.snap.signature.first);
        w.value(pc.snap.signature.second);
        w.end_array();
        w.kv("kappa", pc.snap.kappa);
        w.key("membership");
        json_membership(w, evals[i].membership);
        w.key("quasi_einstein");
        json_quasi_einstein(w, evals[i].qe);
        w.key("conditions");
        w.begin_array();
        for (const grw::ConditionOutcome& o : evals[i].outcomes) json_outcome(w, o);
        w.end_array();
        w.end_object();
      }
      w.end_array();
      w.kv("verdict", verdict);
      w.kv("config_echo", sc.config_text);
      w.kv("wall_clock_ms", wall);
      w.end_object();
    } else if (format == "csv") {
      os << "point,condition,status,L,residual,holds\n";
      for (std::size_t i = 0; i < sc.points.size(); ++i) {
        for (const grw::ConditionOutcome& o : evals[i].outcomes) {
          double worst = 0.0;
          for (double r : o.residuals) worst = std::max(worst, r);
          os << sc.points[i].label << ',' << grw::condition_name(o.id) << ','
             << o.status << ','
             << (o.coefficients.empty() ? "" : csv_num(o.coefficients[0])) << ','
             << (o.residuals.empty() ? "" : csv_num(worst)) << ','
             << (!o.counts ? "vacuous" : (o.holds ? "true" : "false")) << '\n';
        }
      }
    } else {
      os << "manifold: " << sc.manifold_label << "\nverdict: " << verdict << "\n";
    }
    write_file(out_path, os.str());
    std::cout << "report written to " << out_path << "\n";
  }
  return any_fail ? 2 : 0;
}

// ----------------------------------------------------------------- verify --

int run_verify(std::vector<std::string> suites, const CommonOpts& opt) {
  const auto t0 = Clock::now();
  if (suites.empty() ||
      std::find(suites.begin(), suites.end(), "all") != suites.end())
    suites = grw::suite_names();
  for (const std::string& name : suites) {
    const auto& known = grw::suite_names();
    if (std::find(known.begin(), known.end(), name) == known.end())
      throw grwcli::CliError("unknown suite \"" + name + "\"");
  }
  std::string format = !opt.format.empty() ? opt.format : "json";
  if (format != "json" && format != "csv" && format != "table")
    throw grwcli::CliError("unknown report format \"" + format + "\"");

  std::vector<grw::SuiteReport> reports;
  reports.reserve(suites.size());
  for (const std::string& name : suites)
    reports.push_back(grw::run_suite(name, opt.jobs));

  bool all_pass = true;
  std::vector<std::vector<std::string>> rows;
  for (const grw::SuiteReport& rep : reports) {
    all_pass = all_pass && rep.pass;
    for (const grw::SuiteLine& l : rep.lines) {
      std::string bound;
      if (l.kind == "value")
        bound = fmt_short(l.expected) + " +- " + fmt_short(l.tol);
      else if (l.kind == "residual")
        bound = "<= " + fmt_short(l.tol);
      else if (l.kind == "count")
        bound = "== " + fmt_short(l.expected);
      else
        bound = "true";
      rows.push_back({rep.name, l.label, l.kind, fmt_short(l.observed), bound,
                      l.pass ? "ok" : "FAIL"});
    }
  }
  std::cout << render_table({"suite", "check", "kind", "observed", "required",
                             "status"},
                            rows);
  const double wall = elapsed_ms(t0);
  std::cout << "verdict: " << (all_pass ? "pass" : "fail") << "\n";
  std::cout << "wall clock: " << fmt_short(wall) << " ms\n";

  if (!opt.out_path.empty()) {
    std::ostringstream os;
    if (format == "json") {
      grwcli::JsonWriter w(os);
      w.begin_object();
      w.kv("version", kVersion);
      w.kv("command", "verify");
      w.key("seed");
      w.value(static_cast<long long>(opt.seed.value_or(0)));
      w.key("suites_requested");
      w.begin_array();
      for (const std::string& s : suites) w.value(s);
      w.end_array();
      w.key("suites");
      w.begin_array();
      for (const grw::SuiteReport& rep : reports) {
        w.begin_object();
        w.kv("name", rep.name);
        w.kv("pass", rep.pass);
        w.key("checks");
        w.begin_array();
        for (const grw::SuiteLine& l : rep.lines) {
          w.begin_object();
          w.kv("label", l.label);
          w.kv("kind", l.kind);
          w.kv("pass", l.pass);
          w.kv("observed", l.observed);
          w.kv("expected", l.expected);
          w.kv("tol", l.tol);
          w.end_object();
        }
        w.end_array();
        w.end_object();
      }
      w.end_array();
      w.kv("verdict", all_pass ? "pass" : "fail");
      w.kv("wall_clock_ms", wall);
      w.end_object();
    } else if (format == "csv") {
      os << "suite,check,kind,pass,observed,expected,tol\n";
      for (const grw::SuiteReport& rep : reports)
        for (const grw::SuiteLine& l : rep.lines)
          os << rep.name << ",\"" << l.label << "\"," << l.kind << ','
             << (l.pass ? "true" : "false") << ',' << csv_num(l.observed) << ','
             << csv_num(l.expected) << ',' << csv_num(l.tol) << '\n';
    } else {
      os << render_table({"suite", "check", "kind", "observed", "required",
                          "status"},
                         rows);
      os << "verdict: " << (all_pass ? "pass" : "fail") << "\n";
    }
    write_file(opt.out_path, os.str());
    std::cout << "report written to " << opt.out_path << "\n";
  }
  return all_pass ? 0 : 2;
}

// ------------------------------------------------------------------ sweep --

int run_sweep(const CommonOpts& opt) {
  grwcli::Scenario sc = grwcli::load_scenario(opt.config_path, opt.seed);
  if (opt.tol > 0.0) sc.default_tol = opt.tol;
  for (const grwcli::PointCase& pc : sc.points)
    if (!pc.has_warp)
      throw grwcli::CliError("sweep requires a warped manifold with an x1 grid");
  const std::string out_path = !opt.out_path.empty() ? opt.out_path : sc.out_path;
  std::string format = !opt.format.empty()
                           ? opt.format
                           : (!sc.out_format.empty() ? sc.out_format : "csv");
  if (format != "csv" && format != "table")
    throw grwcli::CliError("sweep emits csv or table, not \"" + format + "\"");

  const int n = static_cast<int>(sc.points.size());
  std::vector<PointEval> evals(sc.points.size());
  grw::parallel_for(n, opt.jobs, [&](int i) {
    const grwcli::PointCase& pc = sc.points[static_cast<std::size_t>(i)];
    PointEval& ev = evals[static_cast<std::size_t>(i)];
    try {
      const std::optional<double> ea2 = sc.ea2 ? sc.ea2 : pc.ea2;
      for (const grw::ConditionId id : sc.conditions)
        ev.outcomes.push_back(
            grw::evaluate_condition(pc.snap, id, tol_for(sc, id), ea2));
    } catch (const std::exception& e) {
      ev.error = e.what();
    }
  });
  for (std::size_t i = 0; i < evals.size(); ++i)
    if (!evals[i].error.empty())
      throw grwcli::CliError("point " + sc.points[i].label + ": " + evals[i].error);

  std::vector<std::string> header = {"family", "params",          "x1",
                                     "F",      "trT", "Delta1F_over_4F"};
  for (const grw::ConditionId id : sc.conditions) {
    const std::string name = grw::condition_name(id);
    header.push_back(name + "_L");
    header.push_back(name + "_residual");
    header.push_back(name + "_holds");
  }
  std::vector<std::vector<std::string>> rows;
  bool any_fail = false;
  for (std::size_t i = 0; i < sc.points.size(); ++i) {
    const grwcli::PointCase& pc = sc.points[i];
    std::vector<std::string> row = {pc.family,
                                    pc.params,
                                    csv_num(pc.x1),
                                    csv_num(pc.F),
                                    csv_num(pc.scalars.trT),
                                    csv_num(pc.scalars.Delta1F_over_4F)};
    for (const grw::ConditionOutcome& o : evals[i].outcomes) {
      row.push_back(o.coefficients.empty() ? "" : csv_num(o.coefficients[0]));
      double worst = 0.0;
      for (double r : o.residuals) worst = std::max(worst, r);
      row.push_back(o.residuals.empty() ? "" : csv_num(worst));
      row.push_back(!o.counts ? "vacuous" : (o.holds ? "true" : "false"));
      if (o.counts && !o.holds) any_fail = true;
    }
    rows.push_back(std::move(row));
  }

  std::ostringstream os;
  if (format == "csv") {
    for (std::size_t c = 0; c < header.size(); ++c)
      os << header[c] << (c + 1 < header.size() ? "," : "\n");
    for (const auto& row : rows)
      for (std::size_t c = 0; c < row.size(); ++c)
        os << row[c] << (c + 1 < row.size() ? "," : "\n");
  } else {
    os << render_table(header, rows);
  }
  if (out_path.empty()) {
    std::cout << os.str();
  } else {
    write_file(out_path, os.str());
    std::cout << rows.size() << " rows written to " << out_path << "\n";
    std::cout << "verdict: " << (any_fail ? "fail" : "pass") << "\n";
  }
  return any_fail ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grwcli: pointwise curvature conditions on warped products"};
  app.require_subcommand(1);

  CommonOpts opt;
  std::vector<std::string> suites;

  auto add_common = [&](CLI::App* cmd, bool needs_config) {
    if (needs_config)
      cmd->add_option("--config", opt.config_path, "scenario config file (json)")
          ->required();
    cmd->add_option("--out", opt.out_path, "machine report path");
    cmd->add_option("--format", opt.format, "report format: json, csv or table");
    cmd->add_option("--tol", opt.tol, "override the default tolerance");
    cmd->add_option("--seed", opt.seed, "override the config seed");
    cmd->add_option("--jobs", opt.jobs, "worker threads")
        ->envname("GRWLAB_JOBS");
  };

  CLI::App* classify =
      app.add_subcommand("classify", "evaluate conditions on config snapshots");
  add_common(classify, true);
  CLI::App* verify =
      app.add_subcommand("verify", "run named verification suites");
  verify->add_option("--suite", suites,
                     "suite name (repeatable; \"all\" or omit for all)");
  add_common(verify, false);
  CLI::App* sweep =
      app.add_subcommand("sweep", "grid sweep over warp parameters and x1");
  add_common(sweep, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (classify->parsed()) return run_classify(opt);
    if (verify->parsed()) return run_verify(suites, opt);
    if (sweep->parsed()) return run_sweep(opt);
  } catch (const grwcli::CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
