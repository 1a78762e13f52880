#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace qnd {

/// Antenna and pump constants, CGS.
struct AntennaParams {
  double arm_length;              // L, cm
  double mirror_mass;             // M, g (end mirrors)
  double probe_mass;              // m, g (central mirror D)
  double optical_frequency;       // omega_o, rad/s
  double signal_frequency;        // omega_gr, rad/s
  double signal_duration;         // tau_gr, s
  double energy;                  // total circulating optical energy, erg
  double optical_relaxation;      // tau_o*, s
  double mechanical_relaxation;   // tau_m*, s
  double temperature;             // T, K
  double optical_beat;            // Omega, rad/s (coupled optical resonators)

  /// Throws Validation naming the first nonpositive field. Returns advisory
  /// warnings (currently: probe mass not below mirror mass).
  std::vector<std::string> validate() const;

  /// N = E / (hbar omega_o).
  double quanta() const;
};

/// nu = (2 omega_o^2 E^2 / (m M L^4))^{1/6}.
double characteristic_frequency(const AntennaParams& p);

struct CharacteristicRoots {
  double nu;
  std::array<std::complex<double>, 6> roots;
  double max_real_part;
  bool unstable;
};

/// Analytic roots of p^6 + nu^6 = 0: nu exp(i pi (2k+1)/6).
CharacteristicRoots characteristic_roots(double nu);

/// Same roots via a companion-matrix eigensolve; cross-check only.
std::vector<std::complex<double>> characteristic_roots_companion(double nu);

struct StabilityResult {
  double nu;
  bool stable;    // nu < omega_gr
  double margin;  // omega_gr / nu
};

StabilityResult stability_check(const AntennaParams& p);

/// Quasistatic ponderomotive force E dphi / L on the probe mass, dyn.
double ponderomotive_force(const AntennaParams& p, double delta_phi);

/// Phase difference h omega_o / omega_gr produced by metric amplitude h.
double phase_response(const AntennaParams& p, double h_amplitude);

/// x_signal(omega) = (omega_o E / (m L)) (-i omega^3 / (nu^6 - omega^6)) h(omega),
/// with time dependence exp(+i omega t). Throws Pole within 1e-9 of nu^6 = omega^6.
std::complex<double> signal_transfer(const AntennaParams& p, double omega,
                                     std::complex<double> h_spectrum);

}  // namespace qnd
