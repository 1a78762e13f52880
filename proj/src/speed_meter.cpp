#include "qnd/speed_meter.hpp"

#include <cmath>
#include <numbers>

#include "qnd/constants.hpp"
#include "qnd/errors.hpp"

namespace qnd {

double uncertainty_ratio(const NoiseDensities& d) {
  return (d.position * d.force - d.cross * d.cross) / (0.25 * kHbar * kHbar);
}

void SpeedMeterParams::validate() const {
  const std::pair<const char*, double> fields[] = {
      {"microwave_frequency", microwave_frequency},
      {"pump_power", pump_power},
      {"tunability_length", tunability_length},
      {"beat_frequency", beat_frequency},
      {"relaxation_time", relaxation_time},
      {"impedance", impedance},
  };
  for (const auto& [name, value] : fields) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      fail(ErrorKind::Validation, std::string(name) + " must be finite and strictly positive");
    }
  }
  if (std::abs(std::sin(readout_phase)) < 1e-12) {
    fail(ErrorKind::Validation, "readout_phase must have sin(Phi) != 0");
  }
  if (mean_amplitude) {
    const double derived = std::sqrt(pump_power / (microwave_frequency * decrement() * impedance));
    if (std::abs(*mean_amplitude - derived) > 0.01 * derived) {
      fail(ErrorKind::Validation, "mean_amplitude disagrees with pump balance by more than 1% (" +
                                      std::to_string(*mean_amplitude) + " vs " +
                                      std::to_string(derived) + ")");
    }
  }
  if (pump_voltage && !(*pump_voltage > 0.0)) {
    fail(ErrorKind::Validation, "pump_voltage must be strictly positive");
  }
}

double SpeedMeterParams::working_amplitude() const {
  if (mean_amplitude) return *mean_amplitude;
  return std::sqrt(pump_power / (microwave_frequency * decrement() * impedance));
}

AsymptoticFlags asymptotic_flags(const SpeedMeterParams& s, double signal_frequency) {
  AsymptoticFlags flags{};
  flags.beat_well_above_signal = s.beat_frequency >= 3.0 * signal_frequency;
  flags.bandwidth_well_above_signal =
      s.beat_frequency / s.relaxation_time >= 3.0 * signal_frequency * signal_frequency;
  if (!flags.beat_well_above_signal) {
    flags.warnings.emplace_back("Omega_e < 3 omega_gr: low-frequency densities are inaccurate");
  }
  if (!flags.bandwidth_well_above_signal) {
    flags.warnings.emplace_back(
        "Omega_e / tau_e* < 3 omega_gr^2: low-frequency densities are inaccurate");
  }
  return flags;
}

std::complex<double> resonance_denominator(const SpeedMeterParams& s, double omega) {
  const double beat2 = s.beat_frequency * s.beat_frequency;
  return {beat2 - omega * omega, omega * s.decrement()};
}

namespace {

std::complex<double> checked_denominator(const SpeedMeterParams& s, double omega) {
  const auto den = resonance_denominator(s, omega);
  if (std::abs(den) < 1e-12 * s.beat_frequency * s.beat_frequency) {
    fail(ErrorKind::Resonance, "speed meter evaluated at its resonance");
  }
  return den;
}

}  // namespace

QuadratureResponse transfer_functions(const SpeedMeterParams& s, double omega) {
  const auto den = checked_denominator(s, omega);
  const std::complex<double> i_omega(0.0, omega);
  const double coupling = s.microwave_frequency * s.working_amplitude() / s.tunability_length;
  return {
      -i_omega / (s.impedance * den),
      i_omega * coupling / den,
      i_omega / (s.impedance * den),
  };
}

NoiseDensities noise_spectra(const SpeedMeterParams& s, double omega) {
  if (omega == 0.0) fail(ErrorKind::Domain, "speed meter densities diverge at omega = 0");
  const double sin_phi = std::sin(s.readout_phase);
  if (std::abs(sin_phi) < 1e-12) fail(ErrorKind::Domain, "sin(Phi) must be nonzero");
  const double d2 = s.tunability_length * s.tunability_length;
  const double beat4 = std::pow(s.beat_frequency, 4);
  const double w2 = omega * omega;
  const double we_pe = s.microwave_frequency * s.pump_power;
  return {
      kHbar * d2 * beat4 / (4.0 * w2 * we_pe * sin_phi * sin_phi),
      kHbar * we_pe * w2 / (d2 * beat4),
      -0.5 * kHbar * std::cos(s.readout_phase) / sin_phi,
  };
}

double fluctuation_level(const SpeedMeterParams& s) {
  return kHbar * s.decrement() * s.impedance;
}

NoiseDensities exact_noise_spectra(const SpeedMeterParams& s, double omega) {
  if (omega == 0.0) fail(ErrorKind::Domain, "speed meter densities diverge at omega = 0");
  const auto den = checked_denominator(s, omega);
  const double level = fluctuation_level(s);
  const double sin_phi = std::sin(s.readout_phase);
  const double cos_phi = std::cos(s.readout_phase);
  const double q0 = s.working_amplitude();
  const double delta = s.decrement();

  // x_meter = -d conj(L) (U_c sin Phi + U_s cos Phi) / (2 i omega omega_e delta rho q0 sin Phi)
  // F_meter = -i omega omega_e q0 U_s / (L d)
  const std::complex<double> x_gain =
      -s.tunability_length * std::conj(den) /
      (std::complex<double>(0.0, 2.0 * omega * s.microwave_frequency * delta * s.impedance * q0 *
                                     sin_phi));
  const std::complex<double> f_gain =
      std::complex<double>(0.0, -omega * s.microwave_frequency * q0) /
      (den * s.tunability_length);

  const double s_x = std::norm(x_gain) * (sin_phi * sin_phi + cos_phi * cos_phi) * level;
  const double s_f = std::norm(f_gain) * level;
  // Only U_s reaches both outputs.
  const double s_xf = (x_gain * cos_phi * std::conj(f_gain)).real() * level;
  return {s_x, s_f, s_xf};
}

SpeedMeterTuning optimal_tuning(const AntennaParams& antenna, const TransducerGeometry& g) {
  const auto stability = stability_check(antenna);
  if (!stability.stable) {
    fail(ErrorKind::Tuning, "speed-meter optimum requires a stable antenna (nu < omega_gr)");
  }
  const double ratio6 = std::pow(antenna.signal_frequency / stability.nu, 6);
  const double power = antenna.probe_mass * g.tunability_length * g.tunability_length *
                       std::pow(g.beat_frequency, 4) / (2.0 * g.microwave_frequency) * ratio6;
  const double cot_phase = -ratio6;
  return {power, std::atan2(1.0, cot_phase), cot_phase};
}

std::complex<double> output_signal_spectrum(const SpeedMeterParams& s,
                                            std::complex<double> x_spectrum, double omega) {
  const auto den = checked_denominator(s, omega);
  const std::complex<double> gain =
      std::complex<double>(0.0, -2.0 * omega * s.microwave_frequency * s.decrement() *
                                    s.impedance * s.working_amplitude() *
                                    std::sin(s.readout_phase)) /
      (den * s.tunability_length);
  return gain * x_spectrum;
}

}  // namespace qnd
