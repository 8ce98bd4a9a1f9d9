#include "nonlocal/sampled_table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string>
#include <string_view>

#include "nonlocal/errors.hpp"

namespace nonlocal {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_number(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

}  // namespace

SampledTable parse_sampled_table(std::istream& in) {
  SampledTable tab;
  std::string line;
  std::size_t lineno = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view sv = trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    const auto comma = sv.find(',');
    double t = 0.0, v = 0.0;
    const bool ok = comma != std::string_view::npos &&
                    sv.find(',', comma + 1) == std::string_view::npos &&
                    parse_number(sv.substr(0, comma), t) &&
                    parse_number(sv.substr(comma + 1), v);
    if (!ok) {
      if (!seen_content) {
        seen_content = true;  // header
        continue;
      }
      throw ParseError("expected two numeric columns \"t,value\"", lineno);
    }
    seen_content = true;
    if (!std::isfinite(t) || !std::isfinite(v)) throw ParseError("non-finite entry", lineno);
    if (t <= 0.0) throw ParseError("t must be positive", lineno);
    if (!tab.t.empty() && t <= tab.t.back()) throw ParseError("t must be strictly increasing", lineno);
    if (v <= 0.0) throw ParseError("value must be positive for t > 0", lineno);
    if (!tab.value.empty() && v <= tab.value.back())
      throw ParseError("value must be strictly increasing", lineno);
    tab.t.push_back(t);
    tab.value.push_back(v);
  }
  if (tab.t.size() < 4) throw ParseError("need at least 4 data rows", lineno);
  return tab;
}

SampledTable load_sampled_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  return parse_sampled_table(in);
}

}  // namespace nonlocal
