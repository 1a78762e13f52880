#include "qnd/regime.hpp"

#include <cmath>

#include "qnd/errors.hpp"
#include "qnd/noise_budget.hpp"

namespace qnd {

double theta(const AntennaParams& p) {
  const double l2 = p.arm_length * p.arm_length;
  const double inertia = 1.0 / p.probe_mass + 1.0 / (2.0 * p.mirror_mass);
  return std::pow(2.0 * p.optical_frequency * p.energy * p.optical_beat / l2 * inertia, 0.25);
}

SqlPair sql_pair(const AntennaParams& p) {
  return {sql_strain(p, p.probe_mass), sql_strain(p, p.mirror_mass)};
}

std::string to_string(PumpRegime regime) {
  switch (regime) {
    case PumpRegime::Weak: return "weak";
    case PumpRegime::Intermediate: return "intermediate";
    case PumpRegime::Strong: return "strong";
  }
  return "unknown";
}

RegimeReport classify(const AntennaParams& p) {
  if (p.signal_frequency >= p.optical_beat) {
    fail(ErrorKind::UnsupportedRegime,
         "omega_gr >= Omega is not supported (only omega_gr < Omega is analysed)");
  }
  const double th = theta(p);
  const double th2 = th * th;
  const double base = p.signal_frequency * p.optical_beat;
  const double mass_ratio = 2.0 * p.mirror_mass / p.probe_mass;
  const double strong_edge = base * std::sqrt(mass_ratio);
  const double correlated_edge = base * std::pow(mass_ratio, 0.25);
  const double gain = base / th2;  // omega_gr Omega / Theta^2
  const auto sql = sql_pair(p);
  const double e_sql = quantum_limits(p).sql_energy;

  RegimeReport r{};
  r.theta = th;
  r.h_sql_probe = sql.probe;
  r.h_sql_mirror = sql.mirror;
  r.bar_instability = th2 >= 0.25 * p.optical_beat * p.optical_beat;

  auto near = [th2](double edge) { return std::abs(th2 - edge) <= 0.1 * edge; };
  r.near_boundary = near(base) || near(strong_edge);

  if (th2 < base) {
    r.regime = PumpRegime::Weak;
    r.h_plain = gain * gain * sql.probe;
    r.h_speed = gain * sql.probe;
  } else if (th2 < strong_edge) {
    r.regime = PumpRegime::Intermediate;
    r.h_plain = gain * sql.probe;
    r.energy_required = p.optical_beat / p.signal_frequency * e_sql;
    r.h_correlated = th2 < correlated_edge ? gain * gain * sql.probe : sql.mirror;
    r.correlated_energy_bound = std::pow(8.0 * p.probe_mass / p.mirror_mass, 0.125) * e_sql;
  } else {
    r.regime = PumpRegime::Strong;
    r.h_plain = sql.mirror;
    r.h_speed_theta_form = gain * sql.probe;
    r.h_speed = std::sqrt(e_sql * p.optical_beat / (p.energy * p.signal_frequency)) * sql.mirror;
    r.energy_required = p.optical_beat / p.signal_frequency * e_sql;
  }
  return r;
}

}  // namespace qnd
