#pragma once

#include <filesystem>
#include <istream>
#include <vector>

namespace nonlocal {

/// Two-column "t,value" data with strictly increasing t > 0.
struct SampledTable {
  std::vector<double> t;
  std::vector<double> value;
};

/// Parses the table; an optional header line is skipped, '#' lines are comments.
/// Errors are ParseError carrying the 1-based line number.
SampledTable parse_sampled_table(std::istream& in);
SampledTable load_sampled_table(const std::filesystem::path& path);

}  // namespace nonlocal
