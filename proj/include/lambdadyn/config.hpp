#pragma once

// Run configuration: `key = value` text files plus command-line overrides.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lambdadyn/magnus.hpp"
#include "lambdadyn/model.hpp"
#include "lambdadyn/periodic.hpp"
#include "lambdadyn/sweep.hpp"

namespace lambdadyn {

struct ConfigEntry {
  std::string value;  // quotes already stripped
  std::size_t line = 0;  // 0 = command-line flag
};

using ConfigEntries = std::map<std::string, ConfigEntry, std::less<>>;

struct RunConfig {
  std::optional<std::string> case_name;
  LambdaParams params;  // resolved, detunings applied
  double delta_omega_p = 0.0;
  double delta_omega_c = 0.0;
  MagnusOrder order = MagnusOrder::Order6;
  std::size_t steps_per_period = kDefaultStepsPerPeriod;
  std::optional<double> horizon;
  std::optional<double> periods;
  DriveSelection drive = DriveSelection::Both;
  Frame frame = Frame::Rotating;
  std::string out;  // empty or "-" = stdout
  std::vector<Observable> observables = all_observables();
  double eps_ss = 1e-6;
  unsigned workers = 1;
  std::optional<Axis> omega_p_range;
  std::optional<Axis> omega_c_range;
  /// Adds a wall-clock line to CSV comment headers.
  bool timestamp = false;

  /// horizon if given, otherwise periods (default 1) times `period`.
  double resolved_horizon(double period) const;
};

/// Keys accepted in files (flags map onto the same keys).
const std::vector<std::string>& config_keys();

/// Splits text into entries. Blank lines and `#` comments are skipped;
/// values may be double-quoted. Throws ParseError on malformed lines,
/// unknown keys and duplicates.
ConfigEntries parse_config_text(std::string_view text);

/// Validates and converts entries into a RunConfig. Throws ParseError naming
/// the offending key and its line.
RunConfig resolve_config(const ConfigEntries& entries);

/// parse_config_text followed by resolve_config, with `overrides` (from
/// flags) replacing file entries of the same key.
RunConfig parse_config(std::string_view text, const ConfigEntries& overrides = {});

/// "a:b:step" into an Axis for `parameter`. Throws ArgumentError.
Axis parse_range(std::string_view parameter, std::string_view text);

}  // namespace lambdadyn
