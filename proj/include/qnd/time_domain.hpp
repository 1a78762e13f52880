#pragma once

#include "qnd/optomech.hpp"
#include "qnd/speed_meter.hpp"

// Time-domain integrations of the coupled equations of motion. They share no
// code with the frequency-domain transfer functions and serve as independent
// checks of them.
namespace qnd::oracle {

struct Oscillation {
  double amplitude;
  double phase;  // of A cos(omega t + phase)
};

/// Periodic steady-state response of the probe-mass coordinate to
/// h(t) = h0 sin(omega t), from the lossless, noise-free linearized
/// field/mirror equations (10 real states, per-arm amplitude sqrt(N/2)).
///
/// The free dynamics is unstable (roots of p^6 + nu^6 with positive real
/// part), so the steady state is found by shooting: the one-period monodromy
/// map is integrated with fixed-step RK4 and the periodic initial condition
/// solved for directly. Fails with Pole near omega = nu / k for integer k,
/// where the periodic orbit is not unique.
Oscillation probe_response(const AntennaParams& p, double omega, double h0);

/// Steady-state homodyne output amplitude for x(t) = x0 cos(omega t), from
/// the four slowly-varying-amplitude equations with fluctuations off.
/// Integrated from rest until transients have decayed by ~e^-15.
Oscillation homodyne_response(const SpeedMeterParams& s, double omega, double x0);

}  // namespace qnd::oracle
