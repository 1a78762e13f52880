#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qnd/noise_budget.hpp"
#include "qnd/optomech.hpp"
#include "qnd/speed_meter.hpp"

namespace qnd {

enum class OutputFormat { Table, Csv, JsonLines };

OutputFormat parse_output_format(std::string_view name);
std::string to_string(OutputFormat format);

struct OutputConfig {
  OutputFormat format = OutputFormat::Table;
  std::optional<std::string> path;  // standard output when empty
};

struct MeterSelection {
  MeterKind kind = MeterKind::PlainCoordinate;
  std::optional<double> position_density;  // plain S_x; optimum when absent
  std::optional<double> force_density;     // plain S_F; optimum when absent
  std::string table_path;                  // custom
};

struct SpeedMeterConfig {
  TransducerGeometry geometry;
  std::optional<double> pump_power;     // optimum when absent
  std::optional<double> readout_phase;  // optimum when absent
  std::optional<double> relaxation_time;
  std::optional<double> impedance;
  std::optional<double> mean_amplitude;
  std::optional<double> pump_voltage;
};

struct EvolveConfig {
  int total_quanta = 2;
  int excitation = 1;
  double theta = 1.5707963267948966;
  double delta_phi = 0.1;
};

struct RunConfig {
  AntennaParams antenna;
  MeterSelection meter;
  std::optional<SpeedMeterConfig> speedmeter;
  SignalTemplate signal{TemplateShape::RectSine, 1e-21, 1.0, 1.0};
  EvolveConfig evolve;
  OutputConfig output;
  std::filesystem::path base_dir;  // for relative table paths
  std::vector<std::string> warnings;
};

/// One `key = value` line of a parameter file.
struct ConfigEntry {
  std::string key;
  std::string value;
  int line;
};

using ConfigEntries = std::vector<ConfigEntry>;

/// Syntax only: `key = value` per line, `#` starts a comment, blank lines
/// ignored. Throws Parse (with the line number) on malformed or duplicate lines.
ConfigEntries parse_entries(std::string_view text);

/// Replaces (or appends) one entry; the key must be a known key.
ConfigEntries with_override(ConfigEntries entries, const std::string& key,
                            const std::string& value);

/// Validates every entry and applies documented defaults. Throws Validation
/// naming the offending key, or listing missing required keys.
RunConfig build_config(const ConfigEntries& entries);

RunConfig parse_config(std::string_view text);

/// Reads and parses a file; base_dir is set to its directory.
RunConfig load_config(const std::filesystem::path& path);

const std::vector<std::string>& required_keys();
const std::vector<std::string>& known_keys();

/// Meter model for the configured selection. Plain meters default to the
/// optimal S_x, S_F; custom tables are read from disk.
MeterModel resolve_meter(const RunConfig& config);

/// Speed-meter parameters with optimal W_e and Phi filled in where absent.
/// Throws Validation if the configuration has no speed meter section.
SpeedMeterParams resolve_speed_meter(const RunConfig& config);

/// Reads `omega,S_x,S_F,S_xF` CSV (header required).
TabulatedMeter load_meter_table(const std::filesystem::path& path);

}  // namespace qnd
