#pragma once

#include <vector>

#include "qnd/fock_core.hpp"

namespace qnd {

/// |N, n> with crossquadrature phase theta; eigenvalue of X_theta is 2n - N.
class SymphotonicLabel {
 public:
  SymphotonicLabel(int total_quanta, int excitation, double theta);

  int total_quanta() const noexcept { return total_quanta_; }
  int excitation() const noexcept { return excitation_; }
  double theta() const noexcept { return theta_; }
  int eigenvalue() const noexcept { return 2 * excitation_ - total_quanta_; }

 private:
  int total_quanta_;
  int excitation_;
  double theta_;
};

/// Phase shifts applied to mode 1 and mode 2.
class PhaseShift {
 public:
  PhaseShift(double phi1, double phi2) : phi1_(phi1), phi2_(phi2) {}

  /// phi1 = common - delta/2, phi2 = common + delta/2.
  static PhaseShift differential(double delta_phi, double common = 0.0);

  double phi1() const noexcept { return phi1_; }
  double phi2() const noexcept { return phi2_; }
  double delta_phi() const noexcept { return phi2_ - phi1_; }

 private:
  double phi1_;
  double phi2_;
};

/// Largest N for which states are built exactly.
inline constexpr int kMaxExactQuanta = 40;

/// (A+)^n (B+)^{N-n} |0> / sqrt(2^N n! (N-n)!), with
/// A+ = a1+ + a2+ e^{-i theta} and B+ = a1+ - a2+ e^{-i theta}.
TwoModeState symphotonic_state(const SymphotonicLabel& label);

/// diag(exp(-i (phi1 k + phi2 (N - k)))).
SectorOperator phase_evolution_operator(const SectorBasis& basis, const PhaseShift& shift);

/// 1 - |<N,n|U|N,n>|^2, computed as the squared norm of the component of
/// U|N,n> orthogonal to |N,n> so small probabilities keep full precision.
double transition_probability_exact(const SymphotonicLabel& label, const PhaseShift& shift);

struct FormulaProbability {
  double value;        // clamped to [0, 1]
  double unclamped;    // (dphi^2 / 4) (N + 2 n (N - n))
  bool perturbative;   // unclamped <= 0.5
};

FormulaProbability transition_probability_formula(const SymphotonicLabel& label,
                                                   double delta_phi);

/// Amplitudes <N,n'|U|N,n> for n' = 0..N (same theta), with the global phase
/// exp(-i (phi1 + phi2) N / 2) divided out.
std::vector<Complex> evolved_state_expansion(const SymphotonicLabel& label,
                                             const PhaseShift& shift);

/// Least-squares proportionality constant c in
///   amp(n -/+ 1) = i c dphi sqrt(n (N - n + 1)),  i c dphi sqrt((n + 1)(N - n))
/// fitted from the exact expansion. Exact evolution gives c -> 1/2 as dphi -> 0.
double first_order_scale(const SymphotonicLabel& label, double delta_phi);

}  // namespace qnd
