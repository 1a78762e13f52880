#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qnd/config.hpp"
#include "qnd/report.hpp"

namespace qnd {

enum class Command { Budget, Snr, Stability, Regime, Evolve, SpeedMeter };

Command parse_command(std::string_view name);
std::string to_string(Command command);

/// `key:start:stop:points:log|lin`.
struct Sweep {
  std::string key;
  double start;
  double stop;
  int points;
  bool logarithmic;

  std::vector<double> values() const;
};

Sweep parse_sweep(std::string_view text);

/// Axis of the built-in tables: `delta_phi` for evolve, `omega` for speedmeter.
std::string table_axis(Command command);

/// One command on a validated configuration. `axis` overrides the default
/// table axis of evolve and speedmeter and must name that axis.
Report run_command(const RunConfig& config, Command command,
                   const std::optional<Sweep>& axis = std::nullopt);

/// Full invocation. A sweep over a config key rebuilds the configuration at
/// each point and tabulates the command's scalars, sweep key first.
Report run_invocation(const ConfigEntries& entries, const std::filesystem::path& base_dir,
                      Command command, const std::optional<Sweep>& sweep);

}  // namespace qnd
