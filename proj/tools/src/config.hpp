#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "nonlocal/localization.hpp"
#include "nonlocal/nonlocal_quadrature.hpp"
#include "nonlocal/orlicz.hpp"
#include "nonlocal/spectrum.hpp"
#include "nonlocal/test_functions.hpp"

namespace nonlocal::cli {

enum class Command { LimitTable, PhiCheck, Knp, RvIndex, IneqSuite, EigenScaling };

Command parse_command(const std::string& s);
const char* to_string(Command c);

/// Bad key, bad value or out-of-range setting. `key()` is the dotted name.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct RunConfig {
  Command command = Command::LimitTable;

  // [orlicz]
  std::string kind = "power";  // power | powerlog | maxpower | table
  double p = 2.0;
  double q = 1.0;
  std::string sample_file;

  // [field]
  std::string field = "gaussian";
  int dim = 1;
  double mollify_r = 0.0;  // 0 disables
  int truncate_k = 0;      // 0 disables

  // [limit]
  double s = 0.5;
  double delta0 = 0.4;
  double ratio = 0.6;
  int count = 10;
  std::string kernel = "fractional";  // fractional | constant | power
  double kernel_exponent = 0.0;       // J(r) = r^-exponent for kernel = power
  double match_tol = 0.01;

  // [quad]
  int radial_panels = 8;
  int nodes_per_panel = 16;
  int sphere_order = 12;
  int outer_order = 16;

  // [spectrum]
  int neighbors = 8;
  double mu = 1.0;
  double spectrum_delta0 = 0.2;
  double spectrum_ratio = 0.7;
  int spectrum_count = 6;
  bool mesh_check = true;

  // [ineq]
  std::vector<double> ineq_deltas{0.05, 0.1};
  int ineq_k = 1;
  double ineq_r = 0.05;
  double ineq_h = 0.01;

  // [run]
  std::uint64_t seed = 0x5EED;
  std::filesystem::path output_dir = ".";

  /// Applies one "section.key" = value setting.
  void set(const std::string& key, const std::string& value);
  /// Range checks across keys; throws ConfigError naming the first bad key.
  void validate() const;

  /// Every key in file order as "section.key=value", space separated.
  std::string echo() const;

  OrliczFunction orlicz() const;
  TestFunction test_function() const;
  CubatureSpec cubature() const;
  DeltaSchedule schedule() const;
  DeltaSchedule spectral_schedule() const;
};

/// All keys accepted by RunConfig::set, in echo order.
const std::vector<std::string>& config_keys();

/// Reads an INI file ([section] then key = value). Unknown sections or keys
/// are rejected.
void load_config_file(RunConfig& cfg, const std::filesystem::path& path);
void load_config_text(RunConfig& cfg, const std::string& text);

/// "section.key=value" from a --set flag.
void apply_override(RunConfig& cfg, const std::string& assignment);

/// Lowercase file-name fragment for the configured G, e.g. "powerlog-2-1".
std::string orlicz_slug(const RunConfig& cfg);

}  // namespace nonlocal::cli
