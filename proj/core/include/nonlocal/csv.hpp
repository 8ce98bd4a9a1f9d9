#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nonlocal {

/// Shortest-safe round-trip text: 17 significant digits, '.' decimal point.
std::string format_double(double x);

/// Writes comma-separated rows; cells are pre-formatted strings.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void comment(const std::string& text);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
};

}  // namespace nonlocal
