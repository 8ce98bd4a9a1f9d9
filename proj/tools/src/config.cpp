#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "nonlocal/sampled_table.hpp"

namespace nonlocal::cli {

namespace {

struct Entry {
  std::string key;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  double x = 0.0;
  const auto r = std::from_chars(t.data(), t.data() + t.size(), x);
  if (t.empty() || r.ec != std::errc{} || r.ptr != t.data() + t.size())
    throw ConfigError(key, "expected a number, got '" + v + "'");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  int x = 0;
  const auto r = std::from_chars(t.data(), t.data() + t.size(), x);
  if (t.empty() || r.ec != std::errc{} || r.ptr != t.data() + t.size())
    throw ConfigError(key, "expected an integer, got '" + v + "'");
  return x;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::string t = trim(v);
  int base = 10;
  if (t.size() > 2 && t[0] == '0' && (t[1] == 'x' || t[1] == 'X')) {
    base = 16;
    t = t.substr(2);
  }
  std::uint64_t x = 0;
  const auto r = std::from_chars(t.data(), t.data() + t.size(), x, base);
  if (t.empty() || r.ec != std::errc{} || r.ptr != t.data() + t.size())
    throw ConfigError(key, "expected an unsigned 64-bit integer, got '" + v + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  const std::string t = trim(v);
  if (t == "true" || t == "1" || t == "on" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "off" || t == "no") return false;
  throw ConfigError(key, "expected true or false, got '" + v + "'");
}

std::string num(double x) { return fmt::format("{}", x); }

template <class T>
Entry real(std::string key, T RunConfig::*m) {
  return {key, [key, m](RunConfig& c, const std::string& v) { c.*m = to_double(key, v); },
          [m](const RunConfig& c) { return num(c.*m); }};
}

Entry integer(std::string key, int RunConfig::*m) {
  return {key, [key, m](RunConfig& c, const std::string& v) { c.*m = to_int(key, v); },
          [m](const RunConfig& c) { return std::to_string(c.*m); }};
}

Entry text(std::string key, std::string RunConfig::*m) {
  return {key, [m](RunConfig& c, const std::string& v) { c.*m = trim(v); },
          [m](const RunConfig& c) { return c.*m; }};
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = [] {
    std::vector<Entry> t;
    t.push_back({"run.command",
                 [](RunConfig& c, const std::string& v) {
                   try {
                     c.command = parse_command(trim(v));
                   } catch (const std::invalid_argument& e) {
                     throw ConfigError("run.command", e.what());
                   }
                 },
                 [](const RunConfig& c) { return std::string(to_string(c.command)); }});
    t.push_back(text("orlicz.kind", &RunConfig::kind));
    t.push_back(real("orlicz.p", &RunConfig::p));
    t.push_back(real("orlicz.q", &RunConfig::q));
    t.push_back(text("orlicz.sample_file", &RunConfig::sample_file));
    t.push_back(text("field.name", &RunConfig::field));
    t.push_back(integer("field.dim", &RunConfig::dim));
    t.push_back(real("field.mollify_r", &RunConfig::mollify_r));
    t.push_back(integer("field.truncate_k", &RunConfig::truncate_k));
    t.push_back(real("limit.s", &RunConfig::s));
    t.push_back(real("limit.delta0", &RunConfig::delta0));
    t.push_back(real("limit.ratio", &RunConfig::ratio));
    t.push_back(integer("limit.count", &RunConfig::count));
    t.push_back(text("limit.kernel", &RunConfig::kernel));
    t.push_back(real("limit.kernel_exponent", &RunConfig::kernel_exponent));
    t.push_back(real("limit.match_tol", &RunConfig::match_tol));
    t.push_back(integer("quad.radial_panels", &RunConfig::radial_panels));
    t.push_back(integer("quad.nodes_per_panel", &RunConfig::nodes_per_panel));
    t.push_back(integer("quad.sphere_order", &RunConfig::sphere_order));
    t.push_back(integer("quad.outer_order", &RunConfig::outer_order));
    t.push_back(integer("spectrum.neighbors", &RunConfig::neighbors));
    t.push_back(real("spectrum.mu", &RunConfig::mu));
    t.push_back(real("spectrum.delta0", &RunConfig::spectrum_delta0));
    t.push_back(real("spectrum.ratio", &RunConfig::spectrum_ratio));
    t.push_back(integer("spectrum.count", &RunConfig::spectrum_count));
    t.push_back({"spectrum.mesh_check",
                 [](RunConfig& c, const std::string& v) { c.mesh_check = to_bool("spectrum.mesh_check", v); },
                 [](const RunConfig& c) { return std::string(c.mesh_check ? "true" : "false"); }});
    t.push_back({"ineq.deltas",
                 [](RunConfig& c, const std::string& v) {
                   std::vector<double> out;
                   std::stringstream ss(v);
                   std::string item;
                   while (std::getline(ss, item, ',')) out.push_back(to_double("ineq.deltas", item));
                   if (out.empty()) throw ConfigError("ineq.deltas", "empty list");
                   c.ineq_deltas = out;
                 },
                 [](const RunConfig& c) {
                   std::string s;
                   for (double d : c.ineq_deltas) s += (s.empty() ? "" : ",") + num(d);
                   return s;
                 }});
    t.push_back(integer("ineq.k", &RunConfig::ineq_k));
    t.push_back(real("ineq.r", &RunConfig::ineq_r));
    t.push_back(real("ineq.h", &RunConfig::ineq_h));
    t.push_back({"run.seed",
                 [](RunConfig& c, const std::string& v) { c.seed = to_u64("run.seed", v); },
                 [](const RunConfig& c) { return std::to_string(c.seed); }});
    t.push_back({"run.output_dir", [](RunConfig& c, const std::string& v) { c.output_dir = trim(v); },
                 [](const RunConfig& c) { return c.output_dir.string(); }});
    return t;
  }();
  return table;
}

const Entry& find_entry(const std::string& key) {
  for (const auto& e : entries())
    if (e.key == key) return e;
  throw ConfigError(key, "unknown key");
}

}  // namespace

Command parse_command(const std::string& s) {
  if (s == "limit-table") return Command::LimitTable;
  if (s == "phi-check") return Command::PhiCheck;
  if (s == "knp") return Command::Knp;
  if (s == "rv-index") return Command::RvIndex;
  if (s == "ineq-suite") return Command::IneqSuite;
  if (s == "eigen-scaling") return Command::EigenScaling;
  throw std::invalid_argument("unknown command '" + s + "'");
}

const char* to_string(Command c) {
  switch (c) {
    case Command::LimitTable: return "limit-table";
    case Command::PhiCheck: return "phi-check";
    case Command::Knp: return "knp";
    case Command::RvIndex: return "rv-index";
    case Command::IneqSuite: return "ineq-suite";
    case Command::EigenScaling: return "eigen-scaling";
  }
  return "?";
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& e : entries()) k.push_back(e.key);
    return k;
  }();
  return keys;
}

void RunConfig::set(const std::string& key, const std::string& value) { find_entry(key).set(*this, value); }

std::string RunConfig::echo() const {
  std::string out;
  for (const auto& e : entries()) {
    if (!out.empty()) out += ' ';
    out += e.key + "=" + e.get(*this);
  }
  return out;
}

void RunConfig::validate() const {
  auto need = [](bool ok, const char* key, const std::string& msg) {
    if (!ok) throw ConfigError(key, msg);
  };
  need(kind == "power" || kind == "powerlog" || kind == "maxpower" || kind == "table", "orlicz.kind",
       "must be power, powerlog, maxpower or table");
  need(p >= 1.0 && p < 100.0, "orlicz.p", "must lie in [1, 100)");
  need(q >= 0.0, "orlicz.q", "must be non-negative");
  if (kind == "maxpower") need(q > p, "orlicz.q", "maxpower needs q > p");
  if (kind == "table") need(!sample_file.empty(), "orlicz.sample_file", "required when orlicz.kind = table");
  try {
    parse_catalog_name(field);
  } catch (const std::exception&) {
    throw ConfigError("field.name", "unknown field '" + field + "'");
  }
  need(dim >= 1 && dim <= 3, "field.dim", "must be 1, 2 or 3");
  need(mollify_r >= 0.0, "field.mollify_r", "must be non-negative");
  need(truncate_k >= 0, "field.truncate_k", "must be non-negative");
  need(s > 0.0 && s < 1.0, "limit.s", "must lie in (0, 1)");
  need(delta0 > 0.0 && delta0 <= 1.0, "limit.delta0", "must lie in (0, 1]");
  need(ratio > 0.0 && ratio < 1.0, "limit.ratio", "must lie in (0, 1)");
  need(count >= 4, "limit.count", "needs at least 4 points");
  need(kernel == "fractional" || kernel == "constant" || kernel == "power", "limit.kernel",
       "must be fractional, constant or power");
  need(match_tol > 0.0, "limit.match_tol", "must be positive");
  need(radial_panels >= 1, "quad.radial_panels", "must be positive");
  need(nodes_per_panel >= 2 && nodes_per_panel <= 64, "quad.nodes_per_panel", "must lie in [2, 64]");
  need(sphere_order >= 2 && sphere_order <= 64, "quad.sphere_order", "must lie in [2, 64]");
  need(outer_order >= 2 && outer_order <= 64, "quad.outer_order", "must lie in [2, 64]");
  need(neighbors > 4, "spectrum.neighbors", "must exceed 4");
  need(mu > 0.0, "spectrum.mu", "must be positive");
  need(spectrum_delta0 > 0.0 && spectrum_delta0 <= 1.0, "spectrum.delta0", "must lie in (0, 1]");
  need(spectrum_ratio > 0.0 && spectrum_ratio < 1.0, "spectrum.ratio", "must lie in (0, 1)");
  need(spectrum_count >= 4, "spectrum.count", "needs at least 4 points");
  for (double d : ineq_deltas) need(d > 0.0 && d <= 1.0, "ineq.deltas", "entries must lie in (0, 1]");
  need(ineq_k >= 1, "ineq.k", "must be positive");
  need(ineq_r > 0.0, "ineq.r", "must be positive");
  need(ineq_h > 0.0 && ineq_h < 0.5, "ineq.h", "must lie in (0, 0.5)");
  try {
    schedule().validate(s);
  } catch (const std::exception& e) {
    throw ConfigError("limit.count", e.what());
  }
}

OrliczFunction RunConfig::orlicz() const {
  if (kind == "power") return OrliczFunction::power(p);
  if (kind == "powerlog") return OrliczFunction::power_log(p, q);
  if (kind == "maxpower") return OrliczFunction::max_power(p, q);
  try {
    return OrliczFunction::from_table(load_sampled_table(sample_file),
                                      std::filesystem::path(sample_file).stem().string());
  } catch (const std::exception& e) {
    throw ConfigError("orlicz.sample_file", e.what());
  }
}

TestFunction RunConfig::test_function() const {
  TestFunction u = catalog(field, dim);
  if (mollify_r > 0.0) u = mollify(u, MollifierSpec{mollify_r});
  if (truncate_k > 0) u = truncate(u, truncate_k);
  return u;
}

CubatureSpec RunConfig::cubature() const {
  CubatureSpec spec;
  spec.radial_panels = radial_panels;
  spec.nodes_per_panel = nodes_per_panel;
  spec.sphere.order = sphere_order;
  spec.outer_order = outer_order;
  return spec;
}

DeltaSchedule RunConfig::schedule() const { return DeltaSchedule{delta0, ratio, count}; }

DeltaSchedule RunConfig::spectral_schedule() const {
  return DeltaSchedule{spectrum_delta0, spectrum_ratio, spectrum_count};
}

void load_config_text(RunConfig& cfg, const std::string& text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(text);
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("file", fmt::format("line {}: {}", e.line(), e.message()));
  }
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw ConfigError(section, "key outside a section");
    for (const auto& [key, value] : body) cfg.set(section + "." + key, value.data());
  }
}

void load_config_file(RunConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  load_config_text(cfg, ss.str());
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError(assignment, "expected section.key=value");
  cfg.set(trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

std::string orlicz_slug(const RunConfig& cfg) {
  if (cfg.kind == "power") return "power-" + num(cfg.p);
  if (cfg.kind == "powerlog") return "powerlog-" + num(cfg.p) + "-" + num(cfg.q);
  if (cfg.kind == "maxpower") return "maxpower-" + num(cfg.p) + "-" + num(cfg.q);
  return "table-" + std::filesystem::path(cfg.sample_file).stem().string();
}

}  // namespace nonlocal::cli
