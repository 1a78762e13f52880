#include "qnd/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "qnd/errors.hpp"
#include "qnd/noise_budget.hpp"
#include "qnd/regime.hpp"
#include "qnd/speed_meter.hpp"
#include "qnd/symphotonic.hpp"

namespace qnd {

namespace {

Value opt(const std::optional<double>& v) { return v ? Value(*v) : Value(); }

double parse_number(std::string_view text, std::string_view what) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [p, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || p != end || !std::isfinite(v)) {
    fail(ErrorKind::Parse, "sweep: bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return v;
}

Report budget(const RunConfig& cfg) {
  const auto meter = resolve_meter(cfg);
  std::optional<TransducerGeometry> geometry;
  if (cfg.speedmeter) geometry = cfg.speedmeter->geometry;
  const auto b = compute_noise_budget(cfg.antenna, meter, cfg.signal, geometry);

  Report r{"budget", {}, {}};
  r.add("nu_rad_s", b.nu);
  r.add("omega_gr_rad_s", cfg.antenna.signal_frequency);
  r.add("stable", b.stable);
  r.add("stability_margin", b.stability_margin);
  r.add("meter", to_string(b.meter));
  r.add("h_mech", b.h_mech);
  r.add("h_opt", b.h_opt);
  r.add("h_meter", b.h_meter);
  r.add("h_total", b.h_total);
  r.add("h_sql_mirror", b.h_sql_mirror);
  r.add("h_sql_probe", b.h_sql_probe);
  r.add("displacement_sql_cm", b.displacement_sql);
  r.add("energy_uncertainty_erg", b.energy_uncertainty);
  r.add("sql_energy_erg", b.sql_energy);
  r.add("velocity_ratio", b.velocity_ratio);
  r.add("tau_m_min_s", b.thresholds.mechanical_min);
  r.add("tau_o_min_s", b.thresholds.optical_min);
  if (b.speed_tuning) {
    r.add("W_e_erg_s", b.speed_tuning->pump_power);
    r.add("Phi_rad", b.speed_tuning->readout_phase);
    r.add("cot_Phi", b.speed_tuning->cot_phase);
  } else {
    r.add("W_e_erg_s", Value());
    r.add("Phi_rad", Value());
    r.add("cot_Phi", Value());
  }
  r.add("template", to_string(cfg.signal.shape()));
  r.add("snr", opt(b.snr));
  r.add("h0_snr1", opt(b.detection_amplitude));
  return r;
}

Report snr_report(const RunConfig& cfg) {
  const auto meter = resolve_meter(cfg);
  const double value = snr(cfg.antenna, meter, cfg.signal);
  Report r{"snr", {}, {}};
  r.add("meter", to_string(kind_of(meter)));
  r.add("template", to_string(cfg.signal.shape()));
  r.add("h0", cfg.signal.amplitude());
  r.add("tau_s", cfg.signal.duration());
  r.add("snr", value);
  r.add("h0_snr1", cfg.signal.amplitude() > 0.0 && value > 0.0
                       ? cfg.signal.amplitude() / std::sqrt(value)
                       : detection_amplitude(cfg.antenna, meter, cfg.signal));
  return r;
}

Report stability(const RunConfig& cfg) {
  const auto s = stability_check(cfg.antenna);
  const auto roots = characteristic_roots(s.nu);
  Report r{"stability", {}, {}};
  r.add("nu_rad_s", s.nu);
  r.add("omega_gr_rad_s", cfg.antenna.signal_frequency);
  r.add("stable", s.stable);
  r.add("stability_margin", s.margin);
  r.add("free_max_real_part", roots.max_real_part);
  r.add("free_unstable", roots.unstable);
  Table t{{"root", "re_rad_s", "im_rad_s"}, {}};
  for (std::size_t k = 0; k < roots.roots.size(); ++k) {
    t.rows.push_back({static_cast<long long>(k), roots.roots[k].real(), roots.roots[k].imag()});
  }
  r.table = std::move(t);
  return r;
}

Report regime(const RunConfig& cfg) {
  const auto rep = classify(cfg.antenna);
  Report r{"regime", {}, {}};
  r.add("theta_rad_s", rep.theta);
  r.add("omega_gr_rad_s", cfg.antenna.signal_frequency);
  r.add("Omega_rad_s", cfg.antenna.optical_beat);
  r.add("regime", to_string(rep.regime));
  r.add("near_boundary", rep.near_boundary);
  r.add("bar_instability", rep.bar_instability);
  r.add("h_plain", opt(rep.h_plain));
  r.add("h_speed", opt(rep.h_speed));
  r.add("h_speed_theta_form", opt(rep.h_speed_theta_form));
  r.add("h_correlated", opt(rep.h_correlated));
  r.add("energy_required_erg", opt(rep.energy_required));
  r.add("correlated_energy_bound_erg", opt(rep.correlated_energy_bound));
  r.add("h_sql_probe", rep.h_sql_probe);
  r.add("h_sql_mirror", rep.h_sql_mirror);
  return r;
}

Report evolve(const RunConfig& cfg, const std::optional<Sweep>& axis) {
  const auto& e = cfg.evolve;
  const SymphotonicLabel label(e.total_quanta, e.excitation, e.theta);
  const auto deltas = axis ? axis->values() : std::vector<double>{e.delta_phi};
  const bool exact_ok = e.total_quanta <= kMaxExactQuanta;

  Report r{"evolve", {}, {}};
  r.add("N", static_cast<long long>(e.total_quanta));
  r.add("n", static_cast<long long>(e.excitation));
  r.add("theta_rad", e.theta);
  r.add("eigenvalue", static_cast<long long>(label.eigenvalue()));
  Table t{{"delta_phi_rad", "p_exact", "p_formula", "p_formula_unclamped", "perturbative"}, {}};
  for (double d : deltas) {
    const auto shift = PhaseShift::differential(d);
    const auto f = transition_probability_formula(label, d);
    t.rows.push_back({d, exact_ok ? Value(transition_probability_exact(label, shift)) : Value(),
                      f.value, f.unclamped, f.perturbative});
  }
  r.table = std::move(t);
  return r;
}

Report speedmeter(const RunConfig& cfg, const std::optional<Sweep>& axis) {
  const auto s = resolve_speed_meter(cfg);
  const double w = cfg.antenna.signal_frequency;
  const auto omegas = axis ? axis->values() : Sweep{"omega", w / 10.0, w * 10.0, 21, true}.values();
  const auto flags = asymptotic_flags(s, w);

  Report r{"speedmeter", {}, {}};
  r.add("omega_e_rad_s", s.microwave_frequency);
  r.add("Omega_e_rad_s", s.beat_frequency);
  r.add("d_cm", s.tunability_length);
  r.add("W_e_erg_s", s.pump_power);
  r.add("Phi_rad", s.readout_phase);
  r.add("cot_Phi", std::cos(s.readout_phase) / std::sin(s.readout_phase));
  r.add("delta_e_rad_s", s.decrement());
  r.add("q0", s.working_amplitude());
  r.add("fluctuation_level", fluctuation_level(s));
  r.add("beat_well_above_signal", flags.beat_well_above_signal);
  r.add("bandwidth_well_above_signal", flags.bandwidth_well_above_signal);
  Table t{{"omega_rad_s", "S_x_cm2s", "S_F_dyn2s", "S_xF_ergs", "S_x_exact_cm2s",
           "S_F_exact_dyn2s", "S_xF_exact_ergs", "uncertainty_ratio"},
          {}};
  for (double om : omegas) {
    const auto a = noise_spectra(s, om);
    const auto x = exact_noise_spectra(s, om);
    t.rows.push_back({om, a.position, a.force, a.cross, x.position, x.force, x.cross,
                      uncertainty_ratio(a)});
  }
  r.table = std::move(t);
  return r;
}

}  // namespace

Command parse_command(std::string_view name) {
  if (name == "budget") return Command::Budget;
  if (name == "snr") return Command::Snr;
  if (name == "stability") return Command::Stability;
  if (name == "regime") return Command::Regime;
  if (name == "evolve") return Command::Evolve;
  if (name == "speedmeter") return Command::SpeedMeter;
  fail(ErrorKind::Validation, "unknown command '" + std::string(name) +
                                  "' (budget, snr, stability, regime, evolve, speedmeter)");
}

std::string to_string(Command command) {
  switch (command) {
    case Command::Budget: return "budget";
    case Command::Snr: return "snr";
    case Command::Stability: return "stability";
    case Command::Regime: return "regime";
    case Command::Evolve: return "evolve";
    case Command::SpeedMeter: return "speedmeter";
  }
  return "budget";
}

std::vector<double> Sweep::values() const {
  std::vector<double> out(points);
  for (int i = 0; i < points; ++i) {
    const double f = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    out[i] = logarithmic ? std::exp(std::log(start) + f * (std::log(stop) - std::log(start)))
                         : start + f * (stop - start);
  }
  if (points > 1) out.back() = stop;
  return out;
}

Sweep parse_sweep(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const auto colon = text.find(':', pos);
    parts.push_back(text.substr(pos, colon == std::string_view::npos ? colon : colon - pos));
    if (colon == std::string_view::npos) break;
    pos = colon + 1;
  }
  if (parts.size() != 5 || parts[0].empty()) {
    fail(ErrorKind::Parse, "sweep: expected key:start:stop:points:log|lin");
  }
  Sweep s{std::string(parts[0]), parse_number(parts[1], "start"), parse_number(parts[2], "stop"),
          0, false};
  const double pts = parse_number(parts[3], "points");
  if (pts < 1 || pts != std::floor(pts) || pts > 100000) {
    fail(ErrorKind::Validation, "sweep: points must be an integer in [1, 100000]");
  }
  s.points = static_cast<int>(pts);
  if (parts[4] == "log") {
    s.logarithmic = true;
    if (!(s.start > 0.0 && s.stop > 0.0)) {
      fail(ErrorKind::Validation, "sweep: log spacing needs positive start and stop");
    }
  } else if (parts[4] != "lin") {
    fail(ErrorKind::Parse, "sweep: spacing must be log or lin");
  }
  return s;
}

std::string table_axis(Command command) {
  if (command == Command::Evolve) return "delta_phi";
  if (command == Command::SpeedMeter) return "omega";
  return {};
}

Report run_command(const RunConfig& config, Command command, const std::optional<Sweep>& axis) {
  if (axis && axis->key != table_axis(command)) {
    fail(ErrorKind::Validation, "sweep: " + to_string(command) + " has no table axis '" +
                                    axis->key + "'");
  }
  switch (command) {
    case Command::Budget: return budget(config);
    case Command::Snr: return snr_report(config);
    case Command::Stability: return stability(config);
    case Command::Regime: return regime(config);
    case Command::Evolve: return evolve(config, axis);
    case Command::SpeedMeter: return speedmeter(config, axis);
  }
  fail(ErrorKind::Validation, "unknown command");
}

Report run_invocation(const ConfigEntries& entries, const std::filesystem::path& base_dir,
                      Command command, const std::optional<Sweep>& sweep) {
  auto build = [&](const ConfigEntries& e) {
    RunConfig cfg = build_config(e);
    cfg.base_dir = base_dir;
    return cfg;
  };
  if (!sweep || sweep->key == table_axis(command)) {
    return run_command(build(entries), command, sweep);
  }
  if (!table_axis(command).empty()) {
    fail(ErrorKind::Validation, "sweep: " + to_string(command) + " sweeps only " +
                                    table_axis(command));
  }

  Report out{to_string(command), {}, Table{}};
  out.add("sweep", sweep->key);
  for (double v : sweep->values()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    const auto point = run_command(build(with_override(entries, sweep->key, buf)), command);
    if (out.table->columns.empty()) {
      out.table->columns.push_back(sweep->key);
      for (const auto& [k, ignored] : point.scalars) out.table->columns.push_back(k);
    }
    std::vector<Value> row{v};
    for (const auto& [ignored, value] : point.scalars) row.push_back(value);
    out.table->rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace qnd
