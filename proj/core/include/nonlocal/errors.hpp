#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace nonlocal {

struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Quadrature or fit could not reach the requested accuracy.
struct AccuracyError : std::runtime_error {
  AccuracyError(const std::string& what, double estimate)
      : std::runtime_error(what), estimate(estimate) {}
  double estimate;
};

/// Two independent routes to the same number disagree.
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

struct InvalidFunctionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonRegularVariation : std::runtime_error {
  NonRegularVariation(const std::string& what, double spread)
      : std::runtime_error(what), spread(spread) {}
  double spread;
};

struct ScheduleTooDeep : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ResolutionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SolverError : std::runtime_error {
  SolverError(const std::string& what, std::vector<double> best, double best_value)
      : std::runtime_error(what), best_iterate(std::move(best)), best_value(best_value) {}
  std::vector<double> best_iterate;
  double best_value;
};

}  // namespace nonlocal
