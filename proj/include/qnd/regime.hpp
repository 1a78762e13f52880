#pragma once

#include <optional>
#include <string>

#include "qnd/optomech.hpp"

namespace qnd {

/// Theta = (2 omega_o E Omega / L^2 (1/m + 1/(2M)))^{1/4}.
double theta(const AntennaParams& p);

struct SqlPair {
  double probe;   // h_SQL(m)
  double mirror;  // h_SQL(M)
};

SqlPair sql_pair(const AntennaParams& p);

enum class PumpRegime { Weak, Intermediate, Strong };

std::string to_string(PumpRegime regime);

/// Sensitivities of the coupled-resonator readout for each meter type.
/// Entries are empty where the formulas do not apply to the regime.
struct RegimeReport {
  double theta;
  PumpRegime regime;
  bool near_boundary;  // Theta^2 within 10% of a regime boundary
  std::optional<double> h_plain;
  std::optional<double> h_speed;
  std::optional<double> h_speed_theta_form;  // strong regime: (omega_gr Omega / Theta^2) h_SQL(m)
  std::optional<double> h_correlated;
  std::optional<double> energy_required;     // (Omega / omega_gr) E_SQL
  std::optional<double> correlated_energy_bound;  // (8 m / M)^{1/8} E_SQL
  bool bar_instability;  // Theta^2 >= Omega^2 / 4
  double h_sql_probe;
  double h_sql_mirror;
};

/// Weak:          Theta^2 <  omega_gr Omega
/// Intermediate:  omega_gr Omega <= Theta^2 < omega_gr Omega sqrt(2M/m)
/// Strong:        Theta^2 >= omega_gr Omega sqrt(2M/m)
/// Throws UnsupportedRegime when omega_gr >= Omega.
RegimeReport classify(const AntennaParams& p);

}  // namespace qnd
