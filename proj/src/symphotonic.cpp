#include "qnd/symphotonic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qnd/errors.hpp"

namespace qnd {

SymphotonicLabel::SymphotonicLabel(int total_quanta, int excitation, double theta)
    : total_quanta_(total_quanta), excitation_(excitation), theta_(theta) {
  if (total_quanta < 0) fail(ErrorKind::Domain, "N must be nonnegative");
  if (excitation < 0 || excitation > total_quanta) {
    fail(ErrorKind::Domain, "n must lie in [0, N], got n=" + std::to_string(excitation) +
                                " N=" + std::to_string(total_quanta));
  }
}

PhaseShift PhaseShift::differential(double delta_phi, double common) {
  return {common - 0.5 * delta_phi, common + 0.5 * delta_phi};
}

TwoModeState symphotonic_state(const SymphotonicLabel& label) {
  const int n_total = label.total_quanta();
  const int n = label.excitation();
  if (n_total > kMaxExactQuanta) {
    fail(ErrorKind::Domain, "exact state construction is limited to N <= " +
                                std::to_string(kMaxExactQuanta));
  }
  // Expand the creation-operator polynomial; coeff[j] multiplies (a1+)^j (a2+)^{N-j}.
  const Complex tilt = std::polar(1.0, -label.theta());
  std::vector<Complex> coeff{Complex(1.0)};
  coeff.reserve(n_total + 1);
  for (int factor = 0; factor < n_total; ++factor) {
    const double sign = factor < n ? 1.0 : -1.0;
    std::vector<Complex> next(coeff.size() + 1, Complex(0.0));
    for (std::size_t j = 0; j < coeff.size(); ++j) {
      next[j + 1] += coeff[j];
      next[j] += sign * tilt * coeff[j];
    }
    coeff = std::move(next);
  }

  const SectorBasis basis(n_total);
  ComplexVector amps(basis.dimension());
  const double log_norm = 0.5 * (n_total * std::numbers::ln2 + std::lgamma(n + 1.0) +
                                 std::lgamma(n_total - n + 1.0));
  for (int k = 0; k <= n_total; ++k) {
    // (a1+)^k (a2+)^{N-k} |0> = sqrt(k! (N-k)!) |k, N-k>
    const double log_fock = 0.5 * (std::lgamma(k + 1.0) + std::lgamma(n_total - k + 1.0));
    amps(k) = coeff[k] * std::exp(log_fock - log_norm);
  }
  return TwoModeState(basis, std::move(amps));
}

SectorOperator phase_evolution_operator(const SectorBasis& basis, const PhaseShift& shift) {
  const int n_total = basis.total_quanta();
  ComplexMatrix m = ComplexMatrix::Zero(basis.dimension(), basis.dimension());
  for (int k = 0; k <= n_total; ++k) {
    m(k, k) = std::polar(1.0, -(shift.phi1() * k + shift.phi2() * (n_total - k)));
  }
  return {basis, std::move(m)};
}

double transition_probability_exact(const SymphotonicLabel& label, const PhaseShift& shift) {
  const TwoModeState psi = symphotonic_state(label);
  const TwoModeState evolved = psi.evolve(phase_evolution_operator(psi.basis(), shift));
  const Complex overlap = psi.inner(evolved);
  const ComplexVector orthogonal = evolved.amplitudes() - overlap * psi.amplitudes();
  return std::clamp(orthogonal.squaredNorm(), 0.0, 1.0);
}

FormulaProbability transition_probability_formula(const SymphotonicLabel& label,
                                                  double delta_phi) {
  const double n_total = label.total_quanta();
  const double n = label.excitation();
  const double raw = 0.25 * delta_phi * delta_phi * (n_total + 2.0 * n * (n_total - n));
  return {std::clamp(raw, 0.0, 1.0), raw, raw <= 0.5};
}

std::vector<Complex> evolved_state_expansion(const SymphotonicLabel& label,
                                             const PhaseShift& shift) {
  const int n_total = label.total_quanta();
  const TwoModeState psi = symphotonic_state(label);
  const TwoModeState evolved = psi.evolve(phase_evolution_operator(psi.basis(), shift));
  const Complex unphase = std::polar(1.0, 0.5 * (shift.phi1() + shift.phi2()) * n_total);

  std::vector<Complex> amps;
  amps.reserve(n_total + 1);
  for (int m = 0; m <= n_total; ++m) {
    const TwoModeState target = symphotonic_state(SymphotonicLabel(n_total, m, label.theta()));
    amps.push_back(target.inner(evolved) * unphase);
  }
  return amps;
}

double first_order_scale(const SymphotonicLabel& label, double delta_phi) {
  const int n_total = label.total_quanta();
  const int n = label.excitation();
  const auto amps = evolved_state_expansion(label, PhaseShift::differential(delta_phi));
  // Fit c in amp = i c dphi w by least squares over the available neighbours.
  double num = 0.0;
  double den = 0.0;
  auto accumulate = [&](int target, double weight) {
    if (target < 0 || target > n_total || weight == 0.0) return;
    const double model = delta_phi * weight;
    num += model * (amps[target] / Complex(0.0, 1.0)).real();
    den += model * model;
  };
  accumulate(n - 1, std::sqrt(static_cast<double>(n) * (n_total - n + 1)));
  accumulate(n + 1, std::sqrt(static_cast<double>(n + 1) * (n_total - n)));
  if (den == 0.0) fail(ErrorKind::Domain, "no first-order neighbours for N=0 or dphi=0");
  return num / den;
}

}  // namespace qnd
