#ifndef ACASIMIR_RUN_CONFIG_HPP
#define ACASIMIR_RUN_CONFIG_HPP

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "acasimir/core.hpp"
#include "acasimir/reflectivity.hpp"

namespace acasimir {

// Run configuration grammar (one item per line):
//
//   # comment                      blank lines and '#' lines are ignored
//   [section]                      one of band, cavity, sphere, sweep, dos,
//                                  quadrature, run
//   key = value                    keys are section specific; unknown or
//                                  repeated keys are errors
//
// Reflectivity values: `perfect`, `pressure-release`, `constant <re> [<im>]`
// or `table <path>` (relative paths resolve against the config directory).
// Overrides use `section.key=value` and replace or add entries.

/// Configuration problem; `what()` is a diagnostic naming the location and
/// field, e.g. `run.cfg:7: [cavity] refl_a: ...`.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Spacing { Linear, Log };

struct SweepSpec {
  double min = 0.0;
  double max = 0.0;
  std::size_t points = 0;
  Spacing spacing = Spacing::Linear;

  /// Grid with first and last points exactly `min` and `max`.
  std::vector<double> values() const;
};

struct DosScanSpec {
  double k_min = 0.0;
  double k_max = 0.0;
  std::size_t points = 0;

  std::vector<double> values() const;
};

struct ReflectivityEntry {
  std::string canonical = "perfect";  // value text as echoed back
  ReflectivitySpec spec = PerfectReflector{};
};

struct RunConfig {
  NoiseBand band;
  std::optional<double> separation;
  ReflectivityEntry refl_a;
  ReflectivityEntry refl_b;
  std::optional<double> radius;
  std::optional<SweepSpec> sweep;
  std::optional<DosScanSpec> dos;
  QuadratureSettings quadrature;
  std::optional<Method> method;
  std::optional<std::filesystem::path> output;
};

/// Parses `text` (named `source` in diagnostics), then applies `overrides`.
/// Throws ConfigError.
RunConfig parse_run_config(std::string_view text, const std::string& source,
                           const std::filesystem::path& base_dir,
                           const std::vector<std::string>& overrides = {});

/// Reads and parses a config file. Throws ConfigError.
RunConfig load_run_config(const std::filesystem::path& path,
                          const std::vector<std::string>& overrides = {});

/// Canonical text of the effective configuration. Parsing it yields a
/// configuration that produces identical results.
std::string echo_run_config(const RunConfig& config);

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

}  // namespace acasimir

#endif  // ACASIMIR_RUN_CONFIG_HPP
