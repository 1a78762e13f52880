#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "qnd/optomech.hpp"

namespace qnd {

/// Noise densities of a linear coordinate meter.
struct NoiseDensities {
  double position;  // S_x, cm^2 s
  double force;     // S_F, dyn^2 s
  double cross;     // S_xF, erg s
};

/// S_x S_F - S_xF^2 divided by hbar^2 / 4. Physical meters give >= 1.
double uncertainty_ratio(const NoiseDensities& d);

/// Two-cavity microwave speed meter: a working cavity whose frequency
/// depends on the probe coordinate, coupled at beat frequency Omega_e to a
/// pumped buffer cavity and read out by a homodyne detector.
struct SpeedMeterParams {
  double microwave_frequency;  // omega_e, rad/s
  double pump_power;           // W_e, erg/s
  double tunability_length;    // d, cm
  double beat_frequency;       // Omega_e, rad/s
  double readout_phase;        // Phi, rad
  double relaxation_time;      // tau_e*, s (loaded working cavity)
  double impedance;            // rho, CGS
  std::optional<double> mean_amplitude;  // q0; derived from pump balance when absent
  std::optional<double> pump_voltage;    // U0; informational

  /// Throws Validation on nonpositive fields, sin(Phi) == 0, or a supplied
  /// q0 that disagrees with pump balance by more than 1%.
  void validate() const;

  double decrement() const { return 0.5 / relaxation_time; }  // delta_e

  /// q0 = sqrt(W_e / (omega_e delta_e rho)).
  double working_amplitude() const;
};

struct AsymptoticFlags {
  bool beat_well_above_signal;     // Omega_e >= 3 omega_gr
  bool bandwidth_well_above_signal;  // Omega_e / tau_e* >= 3 omega_gr^2
  std::vector<std::string> warnings;
};

AsymptoticFlags asymptotic_flags(const SpeedMeterParams& s, double signal_frequency);

/// Linear responses of the working-cavity quadratures (exp(+i omega t)).
struct QuadratureResponse {
  std::complex<double> cosine_per_sine_input;      // a1 / U_s
  std::complex<double> sine_per_displacement;      // b1 / x
  std::complex<double> sine_per_cosine_input;      // b1 / U_c
};

/// L(omega) = Omega_e^2 - omega^2 + i omega delta_e.
std::complex<double> resonance_denominator(const SpeedMeterParams& s, double omega);

/// Throws Resonance where |L(omega)| < 1e-12 Omega_e^2.
QuadratureResponse transfer_functions(const SpeedMeterParams& s, double omega);

/// Low-frequency densities:
///   S_x = hbar d^2 Omega_e^4 / (4 omega^2 omega_e W_e sin^2 Phi)
///   S_F = hbar omega_e W_e omega^2 / (d^2 Omega_e^4)
///   S_xF = -(hbar / 2) cot Phi
/// Throws Domain at omega = 0.
NoiseDensities noise_spectra(const SpeedMeterParams& s, double omega);

/// White two-quadrature level of the waveguide fluctuation, hbar delta_e rho,
/// fixed so the exact pipeline reduces to noise_spectra at low frequency.
double fluctuation_level(const SpeedMeterParams& s);

/// Densities propagated through the full transfer functions (no low-frequency
/// approximation), using fluctuation_level() for U_c and U_s.
NoiseDensities exact_noise_spectra(const SpeedMeterParams& s, double omega);

struct TransducerGeometry {
  double tunability_length;    // d, cm
  double beat_frequency;       // Omega_e, rad/s
  double microwave_frequency;  // omega_e, rad/s
};

struct SpeedMeterTuning {
  double pump_power;     // W_e, erg/s
  double readout_phase;  // Phi in (0, pi)
  double cot_phase;      // -omega_gr^6 / nu^6
};

/// W_e = (m d^2 Omega_e^4 / (2 omega_e)) (omega_gr / nu)^6, cot Phi = -(omega_gr / nu)^6.
/// Throws Tuning for an unstable antenna (nu >= omega_gr).
SpeedMeterTuning optimal_tuning(const AntennaParams& antenna, const TransducerGeometry& g);

/// Homodyne output spectrum for displacement spectrum x, noise off:
///   -2 i omega omega_e delta_e rho q0 sin(Phi) x / (L(omega) d)
std::complex<double> output_signal_spectrum(const SpeedMeterParams& s,
                                            std::complex<double> x_spectrum, double omega);

}  // namespace qnd
