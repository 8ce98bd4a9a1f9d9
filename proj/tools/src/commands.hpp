#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "config.hpp"

namespace nonlocal::cli {

enum ExitCode { kPass = 0, kAssertionFailed = 1, kConfigError = 2 };

struct RunOutcome {
  int exit_code = kPass;
  std::vector<std::filesystem::path> files;
};

/// Runs cfg.command, writes its CSV under cfg.output_dir and a short summary to
/// `out`. Failing rows go to `err`. Config errors are thrown as ConfigError.
RunOutcome run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace nonlocal::cli
