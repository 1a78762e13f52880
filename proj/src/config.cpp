#include "qnd/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "qnd/errors.hpp"

namespace qnd {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> to_double(std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

// Typed access to validated entries, recording which keys were consumed.
class EntryReader {
 public:
  explicit EntryReader(const ConfigEntries& entries) {
    for (const auto& e : entries) by_key_.emplace(e.key, &e);
  }

  bool has(const std::string& key) const { return by_key_.count(key) != 0; }

  std::optional<std::string> text(const std::string& key) const {
    auto it = by_key_.find(key);
    if (it == by_key_.end()) return std::nullopt;
    return it->second->value;
  }

  std::optional<double> number(const std::string& key) const {
    auto it = by_key_.find(key);
    if (it == by_key_.end()) return std::nullopt;
    auto v = to_double(it->second->value);
    if (!v) {
      fail(ErrorKind::Parse, "line " + std::to_string(it->second->line) + ": " + key +
                                 ": expected a number, got '" + it->second->value + "'");
    }
    return v;
  }

  std::optional<double> positive(const std::string& key) const {
    auto v = number(key);
    if (v && !(*v > 0.0)) fail(ErrorKind::Validation, key + ": must be strictly positive");
    return v;
  }

  double positive_or(const std::string& key, double fallback) const {
    return positive(key).value_or(fallback);
  }

  std::optional<int> integer(const std::string& key) const {
    auto v = number(key);
    if (!v) return std::nullopt;
    if (*v != std::floor(*v) || std::abs(*v) > 1e9) {
      fail(ErrorKind::Validation, key + ": must be an integer");
    }
    return static_cast<int>(*v);
  }

 private:
  std::map<std::string, const ConfigEntry*> by_key_;
};

}  // namespace

OutputFormat parse_output_format(std::string_view name) {
  if (name == "table") return OutputFormat::Table;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json-lines") return OutputFormat::JsonLines;
  fail(ErrorKind::Validation, "output format must be table, csv or json-lines, got '" +
                                  std::string(name) + "'");
}

std::string to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::Table: return "table";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::JsonLines: return "json-lines";
  }
  return "table";
}

const std::vector<std::string>& required_keys() {
  static const std::vector<std::string> keys = {"L_cm",     "M_g",      "m_g",
                                                "omega_o",  "omega_gr", "energy_erg"};
  return keys;
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      // antenna
      "L_cm", "M_g", "m_g", "omega_o", "omega_gr", "energy_erg", "tau_gr_s", "tau_o_star_s",
      "tau_m_star_s", "T_K", "Omega_opt",
      // meter
      "meter", "S_x_cm2s", "S_F_dyn2s", "meter_table",
      // speed meter
      "sm_omega_e", "sm_d_cm", "sm_Omega_e", "sm_W_e_erg_s", "sm_Phi_rad", "sm_tau_e_star_s",
      "sm_rho", "sm_q0", "sm_U0",
      // template
      "template", "h0", "template_tau_s",
      // evolve
      "evolve_N", "evolve_n", "evolve_theta_rad", "evolve_delta_phi_rad",
      // output
      "output_format", "output_path"};
  return keys;
}

ConfigEntries parse_entries(std::string_view text) {
  ConfigEntries entries;
  std::set<std::string> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": empty key");
    if (value.empty()) {
      fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": " + key + ": empty value");
    }
    if (!seen.insert(key).second) {
      fail(ErrorKind::Parse, "line " + std::to_string(line_no) + ": duplicate key " + key);
    }
    entries.push_back({key, value, line_no});
  }
  return entries;
}

ConfigEntries with_override(ConfigEntries entries, const std::string& key,
                            const std::string& value) {
  const auto& known = known_keys();
  if (std::find(known.begin(), known.end(), key) == known.end()) {
    fail(ErrorKind::Validation, "unknown key " + key);
  }
  for (auto& e : entries) {
    if (e.key == key) {
      e.value = value;
      return entries;
    }
  }
  entries.push_back({key, value, 0});
  return entries;
}

RunConfig build_config(const ConfigEntries& entries) {
  const auto& known = known_keys();
  for (const auto& e : entries) {
    if (std::find(known.begin(), known.end(), e.key) == known.end()) {
      fail(ErrorKind::Validation, "line " + std::to_string(e.line) + ": unknown key " + e.key);
    }
  }
  const EntryReader in(entries);

  std::vector<std::string> missing;
  for (const auto& key : required_keys()) {
    if (!in.has(key)) missing.push_back(key);
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& key : missing) list += (list.empty() ? "" : ", ") + key;
    fail(ErrorKind::Validation, "missing required keys: " + list);
  }

  RunConfig cfg{};
  auto& a = cfg.antenna;
  a.arm_length = *in.positive("L_cm");
  a.mirror_mass = *in.positive("M_g");
  a.probe_mass = *in.positive("m_g");
  a.optical_frequency = *in.positive("omega_o");
  a.signal_frequency = *in.positive("omega_gr");
  a.energy = *in.positive("energy_erg");
  const double five_cycles = 2.0 * std::numbers::pi * 5.0 / a.signal_frequency;
  a.signal_duration = in.positive_or("tau_gr_s", five_cycles);
  a.optical_relaxation = in.positive_or("tau_o_star_s", 10.0);
  a.mechanical_relaxation = in.positive_or("tau_m_star_s", 1e9);
  a.temperature = in.positive_or("T_K", 4.0);
  a.optical_beat = in.positive_or("Omega_opt", 1e4);
  cfg.warnings = a.validate();

  // meter
  const std::string meter = in.text("meter").value_or("plain");
  if (meter == "plain") {
    cfg.meter.kind = MeterKind::PlainCoordinate;
  } else if (meter == "speed") {
    cfg.meter.kind = MeterKind::SpeedMeter;
  } else if (meter == "custom") {
    cfg.meter.kind = MeterKind::Custom;
  } else {
    fail(ErrorKind::Validation, "meter: must be plain, speed or custom, got '" + meter + "'");
  }
  cfg.meter.position_density = in.positive("S_x_cm2s");
  cfg.meter.force_density = in.positive("S_F_dyn2s");
  if (cfg.meter.position_density.has_value() != cfg.meter.force_density.has_value()) {
    fail(ErrorKind::Validation, "S_x_cm2s and S_F_dyn2s must be given together");
  }
  if (cfg.meter.position_density && cfg.meter.kind != MeterKind::PlainCoordinate) {
    fail(ErrorKind::Validation, "S_x_cm2s/S_F_dyn2s apply only to meter = plain");
  }
  if (cfg.meter.kind == MeterKind::Custom) {
    auto path = in.text("meter_table");
    if (!path) fail(ErrorKind::Validation, "meter_table: required for meter = custom");
    cfg.meter.table_path = *path;
  } else if (in.has("meter_table")) {
    fail(ErrorKind::Validation, "meter_table: applies only to meter = custom");
  }

  // speed meter
  const bool any_sm = std::any_of(entries.begin(), entries.end(),
                                  [](const ConfigEntry& e) { return e.key.rfind("sm_", 0) == 0; });
  if (any_sm) {
    for (const char* key : {"sm_omega_e", "sm_d_cm", "sm_Omega_e"}) {
      if (!in.has(key)) fail(ErrorKind::Validation, std::string(key) + ": required for a speed meter");
    }
    SpeedMeterConfig sm{};
    sm.geometry = {*in.positive("sm_d_cm"), *in.positive("sm_Omega_e"),
                   *in.positive("sm_omega_e")};
    sm.pump_power = in.positive("sm_W_e_erg_s");
    sm.readout_phase = in.number("sm_Phi_rad");
    if (sm.readout_phase && std::abs(std::sin(*sm.readout_phase)) < 1e-12) {
      fail(ErrorKind::Validation, "sm_Phi_rad: sin(Phi) must be nonzero");
    }
    sm.relaxation_time = in.positive("sm_tau_e_star_s");
    sm.impedance = in.positive("sm_rho");
    sm.mean_amplitude = in.positive("sm_q0");
    sm.pump_voltage = in.positive("sm_U0");
    cfg.speedmeter = sm;
  } else if (cfg.meter.kind == MeterKind::SpeedMeter) {
    fail(ErrorKind::Validation, "meter = speed requires sm_omega_e, sm_d_cm and sm_Omega_e");
  }

  // template
  const std::string shape = in.text("template").value_or("rect_sine");
  TemplateShape tshape = TemplateShape::RectSine;
  if (shape == "gaussian_sine") {
    tshape = TemplateShape::GaussianSine;
  } else if (shape != "rect_sine") {
    fail(ErrorKind::Validation, "template: must be rect_sine or gaussian_sine, got '" + shape + "'");
  }
  const double h0 = in.number("h0").value_or(1e-21);
  if (h0 < 0.0) fail(ErrorKind::Validation, "h0: must be nonnegative");
  cfg.signal = SignalTemplate(tshape, h0, a.signal_frequency,
                              in.positive_or("template_tau_s", a.signal_duration));

  // evolve
  cfg.evolve.total_quanta = in.integer("evolve_N").value_or(cfg.evolve.total_quanta);
  cfg.evolve.excitation = in.integer("evolve_n").value_or(cfg.evolve.excitation);
  cfg.evolve.theta = in.number("evolve_theta_rad").value_or(cfg.evolve.theta);
  cfg.evolve.delta_phi = in.number("evolve_delta_phi_rad").value_or(cfg.evolve.delta_phi);
  if (cfg.evolve.total_quanta < 0) fail(ErrorKind::Validation, "evolve_N: must be nonnegative");
  if (cfg.evolve.excitation < 0 || cfg.evolve.excitation > cfg.evolve.total_quanta) {
    fail(ErrorKind::Validation, "evolve_n: must lie in [0, evolve_N]");
  }

  // output
  if (auto f = in.text("output_format")) cfg.output.format = parse_output_format(*f);
  cfg.output.path = in.text("output_path");
  return cfg;
}

RunConfig parse_config(std::string_view text) { return build_config(parse_entries(text)); }

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) fail(ErrorKind::Parse, "cannot open config file " + path.string());
  std::stringstream buffer;
  buffer << file.rdbuf();
  RunConfig cfg = parse_config(buffer.str());
  cfg.base_dir = path.parent_path();
  return cfg;
}

TabulatedMeter load_meter_table(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) fail(ErrorKind::Parse, "cannot open meter table " + path.string());
  std::string line;
  int line_no = 0;
  std::vector<double> omega;
  std::vector<NoiseDensities> nodes;
  while (std::getline(file, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    if (line_no == 1 || (omega.empty() && !to_double(body.substr(0, body.find(','))))) {
      continue;  // header
    }
    std::vector<double> cells;
    std::string_view rest = body;
    while (true) {
      const auto comma = rest.find(',');
      auto v = to_double(trim(rest.substr(0, comma)));
      if (!v) fail(ErrorKind::Parse, path.string() + ": line " + std::to_string(line_no) +
                                         ": expected numeric cells");
      cells.push_back(*v);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (cells.size() != 4) {
      fail(ErrorKind::Parse, path.string() + ": line " + std::to_string(line_no) +
                                 ": expected omega,S_x,S_F,S_xF");
    }
    omega.push_back(cells[0]);
    nodes.push_back({cells[1], cells[2], cells[3]});
  }
  return TabulatedMeter(std::move(omega), std::move(nodes));
}

MeterModel resolve_meter(const RunConfig& config) {
  switch (config.meter.kind) {
    case MeterKind::PlainCoordinate:
      if (config.meter.position_density) {
        return PlainMeter{*config.meter.position_density, *config.meter.force_density};
      }
      return h_meter_plain(config.antenna).meter;
    case MeterKind::SpeedMeter:
      return SpeedMeterModel{resolve_speed_meter(config)};
    case MeterKind::Custom: {
      std::filesystem::path path = config.meter.table_path;
      if (path.is_relative()) path = config.base_dir / path;
      return load_meter_table(path);
    }
  }
  fail(ErrorKind::Validation, "unknown meter kind");
}

SpeedMeterParams resolve_speed_meter(const RunConfig& config) {
  if (!config.speedmeter) {
    fail(ErrorKind::Validation, "speed meter requires sm_omega_e, sm_d_cm and sm_Omega_e");
  }
  const auto& sm = *config.speedmeter;
  std::optional<SpeedMeterTuning> tuning;
  if (!sm.pump_power || !sm.readout_phase) tuning = optimal_tuning(config.antenna, sm.geometry);

  SpeedMeterParams s{};
  s.microwave_frequency = sm.geometry.microwave_frequency;
  s.tunability_length = sm.geometry.tunability_length;
  s.beat_frequency = sm.geometry.beat_frequency;
  s.pump_power = sm.pump_power ? *sm.pump_power : tuning->pump_power;
  s.readout_phase = sm.readout_phase ? *sm.readout_phase : tuning->readout_phase;
  // tau_e* and rho do not enter the low-frequency densities; the defaults put
  // Omega_e / tau_e* well above omega_gr^2 for the tuned geometry.
  s.relaxation_time = sm.relaxation_time.value_or(1.0 / (3.0 * sm.geometry.beat_frequency));
  s.impedance = sm.impedance.value_or(1.0);
  s.mean_amplitude = sm.mean_amplitude;
  s.pump_voltage = sm.pump_voltage;
  s.validate();
  return s;
}

}  // namespace qnd
