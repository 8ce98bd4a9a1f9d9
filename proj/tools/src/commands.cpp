#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "nonlocal/closed_forms.hpp"
#include "nonlocal/csv.hpp"
#include "nonlocal/errors.hpp"

namespace nonlocal::cli {

namespace {

std::string num(double x) { return format_double(x); }
std::string short_num(double x) { return fmt::format("{}", x); }

std::string field_slug(const RunConfig& cfg) {
  std::string s = cfg.field;
  if (cfg.dim != 1) s += "-n" + std::to_string(cfg.dim);
  if (cfg.mollify_r > 0.0) s += "-mollified";
  if (cfg.truncate_k > 0) s += "-trunc" + std::to_string(cfg.truncate_k);
  return s;
}

std::string join(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i];
  return s;
}

// One CSV file with the config echo on top. Rows are kept so failures can be echoed.
class Table {
 public:
  Table(const RunConfig& cfg, const std::string& file_name, std::vector<std::string> columns)
      : path_(cfg.output_dir / file_name), csv_(buf_) {
    csv_.comment("config " + cfg.echo());
    csv_.header(columns);
  }

  void row(std::vector<std::string> cells, bool ok = true) {
    if (!ok) failed_.push_back(join(cells));
    csv_.row(cells);
  }

  const std::vector<std::string>& failed() const { return failed_; }

  std::filesystem::path write() const {
    std::ofstream f(path_, std::ios::binary);
    if (!f) throw ConfigError("run.output_dir", "cannot write '" + path_.string() + "'");
    f << buf_.str();
    return path_;
  }

 private:
  std::filesystem::path path_;
  std::ostringstream buf_;
  CsvWriter csv_;
  std::vector<std::string> failed_;
};

RunOutcome finish(const Table& t, std::ostream& out, std::ostream& err) {
  RunOutcome o;
  o.files.push_back(t.write());
  out << "wrote " << o.files.back().string() << "\n";
  for (const auto& r : t.failed()) err << "assertion failed: " << r << "\n";
  o.exit_code = t.failed().empty() ? kPass : kAssertionFailed;
  return o;
}

std::string fitted(const ConvergenceReport& r) {
  return r.fitted_limit ? num(*r.fitted_limit) : std::string("nan");
}

RunOutcome limit_table(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const TestFunction u = cfg.test_function();
  const OrliczFunction g = cfg.orlicz();
  ConvergenceReport rep;
  if (cfg.kernel == "fractional") {
    rep = verify_main_theorem(u, g, cfg.s, cfg.schedule(), cfg.cubature(), cfg.match_tol);
  } else {
    const Kernel j = cfg.kernel == "constant" ? constant_kernel() : power_kernel(cfg.kernel_exponent);
    rep = verify_correa(u, g, j, cfg.schedule(), cfg.cubature(), cfg.match_tol);
  }
  Table t(cfg, field_slug(cfg) + "_" + orlicz_slug(cfg) + "_" + short_num(cfg.s) + ".csv",
          {"row", "delta", "raw", "scaled", "fitted_limit", "rate_model", "rate", "target",
           "target_normalized", "rel_err", "matched", "diverging"});
  for (const auto& p : rep.series) t.row({"point", num(p.delta), num(p.raw), num(p.scaled), "", "", "", "", "", "", "", ""});
  bool ok;
  if (std::isinf(rep.target)) ok = rep.diverging;
  else ok = !rep.diverging && rep.fitted_limit.has_value() && rep.matched_convention != "neither";
  t.row({"summary", "", "", "", fitted(rep), to_string(rep.rate_model), num(rep.fitted_rate), num(rep.target),
         num(rep.target_normalized), num(rep.relative_error), rep.matched_convention,
         rep.diverging ? "true" : "false"},
        ok);
  out << fmt::format("{} {} s={}: limit {} target {} ({}) rel_err {:.3g}{}\n", u.name, g.name(), cfg.s,
                     fitted(rep), num(rep.target), rep.matched_convention, rep.relative_error,
                     rep.diverging ? " diverging" : "");
  return finish(t, out, err);
}

RunOutcome phi_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const OrliczFunction g = cfg.orlicz();
  if (g.kind() == OrliczKind::Custom) throw ConfigError("orlicz.kind", "phi-check needs a built-in kind");
  const CubatureSpec spec = cfg.cubature();
  Table t(cfg, "phi-check_" + orlicz_slug(cfg) + "_n" + std::to_string(cfg.dim) + ".csv",
          {"a", "s", "delta", "numeric", "closed_form", "rel_err", "pass"});
  double worst = 0.0;
  for (double a : {0.5, 1.0, 2.0})
    for (double s : {0.25, 0.5, 0.75})
      for (double d : {0.1, 0.5, 1.0}) {
        const double x = phi_numeric(a, s, d, g, cfg.dim, spec);
        const double c = phi_closed_form(g, a, s, d, cfg.dim);
        const double rel = std::abs(x - c) / std::abs(c);
        worst = std::max(worst, rel);
        const bool ok = rel < 1e-6;
        t.row({num(a), num(s), num(d), num(x), num(c), num(rel), ok ? "true" : "false"}, ok);
      }
  out << fmt::format("phi-check {} N={}: worst rel_err {:.3g}\n", g.name(), cfg.dim, worst);
  return finish(t, out, err);
}

RunOutcome knp(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Table t(cfg, "knp.csv", {"N", "p", "raw", "normalized", "gamma_normalized", "mc_normalized", "samples", "pass"});
  for (int n : {1, 2, 3})
    for (double p : {1.5, 2.0, 3.0}) {
      try {
        const auto r = k_constant_report(n, p, cfg.seed);
        const bool ok = std::abs(r.normalized / r.gamma_normalized - 1.0) <= 1e-10 &&
                        std::abs(r.monte_carlo_normalized - r.normalized) <= 1e-3;
        t.row({std::to_string(n), num(p), num(r.raw), num(r.normalized), num(r.gamma_normalized),
               num(r.monte_carlo_normalized), std::to_string(r.samples), ok ? "true" : "false"},
              ok);
      } catch (const ConsistencyError& e) {
        t.row({std::to_string(n), num(p), "nan", "nan", "nan", "nan", "0", "false"}, false);
        err << e.what() << "\n";
      }
    }
  out << "knp: 9 rows\n";
  return finish(t, out, err);
}

RunOutcome rv_index(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const OrliczFunction g = cfg.orlicz();
  Table t(cfg, "rv-index_" + orlicz_slug(cfg) + ".csv", {"row", "x", "value", "reference"});
  double index = std::nan("");
  bool ok = true;
  try {
    const IndexReport r = rv_index_at_zero(g);
    for (std::size_t i = 0; i < r.t_schedule.size(); ++i) t.row({"slope", num(r.t_schedule[i]), num(r.slopes[i]), ""});
    index = r.index;
    if (g.kind() != OrliczKind::Custom) ok = std::abs(index - g.index()) <= 0.01;
    t.row({"index", "", num(index), g.kind() == OrliczKind::Custom ? "" : num(g.index())}, ok);
    t.row({"window_spread", "", num(r.window_spread), ""});
  } catch (const NonRegularVariation& e) {
    t.row({"index", "", "nan", num(e.spread)}, false);
    err << e.what() << "\n";
  }
  for (int k = 2; k <= 14; ++k) {
    const double d = std::exp(-static_cast<double>(k));
    t.row({"karamata", num(d), num(karamata_quotient(g, d)), num(1.0 / g.index())});
  }
  out << fmt::format("rv-index {}: {}\n", g.name(), num(index));
  return finish(t, out, err);
}

RunOutcome ineq_suite(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const TestFunction u = cfg.test_function();
  const OrliczFunction g = cfg.orlicz();
  Table t(cfg, "ineq-suite_" + field_slug(cfg) + "_" + orlicz_slug(cfg) + "_" + short_num(cfg.s) + ".csv",
          {"delta", "check", "lhs", "rhs", "margin", "pass", "detail"});
  int failures = 0;
  for (double d : cfg.ineq_deltas) {
    InequalityParams prm;
    prm.s = cfg.s;
    prm.delta = d;
    prm.delta_small = d / 2.0;
    prm.k = cfg.ineq_k;
    prm.r = cfg.ineq_r;
    prm.h = cfg.ineq_h;
    for (const auto& r : run_inequality_suite(u, g, prm, cfg.cubature())) {
      std::string detail = r.detail;
      for (char& c : detail)
        if (c == ',') c = ';';
      failures += !r.pass;
      t.row({num(d), to_string(r.check), num(r.lhs), num(r.rhs), num(r.margin), r.pass ? "true" : "false", detail},
            r.pass);
    }
  }
  out << fmt::format("ineq-suite {} {}: {} failing\n", u.name, g.name(), failures);
  return finish(t, out, err);
}

RunOutcome eigen_scaling(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const OrliczFunction g = cfg.orlicz();
  SpectralOptions opts;
  opts.neighbors = cfg.neighbors;
  opts.mu = cfg.mu;
  opts.seed = cfg.seed;
  opts.mesh_check = cfg.mesh_check;
  const SpectralStudy st = spectral_scaling_study(g, cfg.s, cfg.spectral_schedule(), opts);
  Table t(cfg, "eigen-scaling_" + orlicz_slug(cfg) + "_" + short_num(cfg.s) + ".csv",
          {"row", "delta", "h", "lambda1", "scaled_lambda1", "iterations", "residual", "oracle_lambda1",
           "fitted_limit", "rate_model", "target", "matched", "mesh_halving_change"});
  const bool quadratic = !st.oracle_lambda.empty();
  for (std::size_t i = 0; i < st.solves.size(); ++i) {
    const auto& r = st.solves[i];
    bool ok = r.lambda1 > 0.0;
    std::string oracle;
    if (quadratic) {
      oracle = num(st.oracle_lambda[i]);
      ok = ok && std::abs(r.lambda1 - st.oracle_lambda[i]) / st.oracle_lambda[i] < 1e-8;
    }
    t.row({"point", num(r.delta), num(r.h), num(r.lambda1), num(r.scaled_lambda1), std::to_string(r.iterations),
           num(r.residual), oracle, "", "", "", "", ""},
          ok);
  }
  bool ok = st.report.fitted_limit.has_value();
  if (quadratic) ok = ok && st.report.matched_convention != "neither";
  if (cfg.mesh_check) ok = ok && st.mesh_halving_change < 0.01;
  t.row({"summary", "", "", "", "", "", "", "", fitted(st.report), to_string(st.report.rate_model),
         num(st.report.target), st.report.matched_convention, num(st.mesh_halving_change)},
        ok);
  out << fmt::format("eigen-scaling {} s={}: limit {} target {} ({})\n", g.name(), cfg.s, fitted(st.report),
                     num(st.report.target), st.report.matched_convention);
  return finish(t, out, err);
}

}  // namespace

RunOutcome run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  if (ec) throw ConfigError("run.output_dir", ec.message());
  switch (cfg.command) {
    case Command::LimitTable: return limit_table(cfg, out, err);
    case Command::PhiCheck: return phi_check(cfg, out, err);
    case Command::Knp: return knp(cfg, out, err);
    case Command::RvIndex: return rv_index(cfg, out, err);
    case Command::IneqSuite: return ineq_suite(cfg, out, err);
    case Command::EigenScaling: return eigen_scaling(cfg, out, err);
  }
  return {};
}

}  // namespace nonlocal::cli
