#include "qnd/optomech.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "qnd/constants.hpp"
#include "qnd/errors.hpp"

namespace qnd {

std::vector<std::string> AntennaParams::validate() const {
  const std::pair<const char*, double> fields[] = {
      {"arm_length", arm_length},
      {"mirror_mass", mirror_mass},
      {"probe_mass", probe_mass},
      {"optical_frequency", optical_frequency},
      {"signal_frequency", signal_frequency},
      {"signal_duration", signal_duration},
      {"energy", energy},
      {"optical_relaxation", optical_relaxation},
      {"mechanical_relaxation", mechanical_relaxation},
      {"temperature", temperature},
      {"optical_beat", optical_beat},
  };
  for (const auto& [name, value] : fields) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      fail(ErrorKind::Validation, std::string(name) + " must be finite and strictly positive");
    }
  }
  std::vector<std::string> warnings;
  if (probe_mass > mirror_mass) {
    warnings.emplace_back("probe mass exceeds mirror mass; estimates assume m << M");
  }
  return warnings;
}

double AntennaParams::quanta() const { return energy / (kHbar * optical_frequency); }

double characteristic_frequency(const AntennaParams& p) {
  const double l2 = p.arm_length * p.arm_length;
  const double nu6 = 2.0 * p.optical_frequency * p.optical_frequency * p.energy * p.energy /
                     (p.probe_mass * p.mirror_mass * l2 * l2);
  return std::pow(nu6, 1.0 / 6.0);
}

CharacteristicRoots characteristic_roots(double nu) {
  if (nu < 0.0) fail(ErrorKind::Domain, "nu must be nonnegative");
  CharacteristicRoots out{nu, {}, 0.0, false};
  for (int k = 0; k < 6; ++k) {
    out.roots[k] = std::polar(nu, std::numbers::pi * (2 * k + 1) / 6.0);
  }
  out.max_real_part = nu * std::cos(std::numbers::pi / 6.0);
  out.unstable = out.max_real_part > 0.0;
  return out;
}

std::vector<std::complex<double>> characteristic_roots_companion(double nu) {
  if (nu < 0.0) fail(ErrorKind::Domain, "nu must be nonnegative");
  // Roots of q^6 + 1 on the unit scale, then rescaled by nu.
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(6, 6);
  for (int i = 1; i < 6; ++i) companion(i, i - 1) = 1.0;
  companion(0, 5) = -1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  std::vector<std::complex<double>> roots;
  for (int i = 0; i < 6; ++i) roots.push_back(nu * solver.eigenvalues()(i));
  return roots;
}

StabilityResult stability_check(const AntennaParams& p) {
  const double nu = characteristic_frequency(p);
  return {nu, nu < p.signal_frequency, p.signal_frequency / nu};
}

double ponderomotive_force(const AntennaParams& p, double delta_phi) {
  return p.energy * delta_phi / p.arm_length;
}

double phase_response(const AntennaParams& p, double h_amplitude) {
  return h_amplitude * p.optical_frequency / p.signal_frequency;
}

std::complex<double> signal_transfer(const AntennaParams& p, double omega,
                                     std::complex<double> h_spectrum) {
  const double nu = characteristic_frequency(p);
  const double nu6 = std::pow(nu, 6);
  const double w3 = omega * omega * omega;
  const double gap = nu6 - w3 * w3;
  if (std::abs(gap) < 1e-9 * nu6) {
    fail(ErrorKind::Pole, "signal transfer evaluated at the nu^6 = omega^6 pole");
  }
  const double gain = p.optical_frequency * p.energy / (p.probe_mass * p.arm_length);
  return gain * std::complex<double>(0.0, -w3 / gap) * h_spectrum;
}

}  // namespace qnd
