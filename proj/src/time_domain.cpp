#include "qnd/time_domain.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>

#include "qnd/constants.hpp"
#include "qnd/errors.hpp"

namespace qnd::oracle {

namespace odeint = boost::numeric::odeint;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Fourier coefficient at the drive frequency from uniform samples covering
// exactly one period (last sample excluded). Spectrally accurate for smooth
// periodic signals.
Oscillation fundamental(const std::vector<double>& samples) {
  const auto n = samples.size();
  double c = 0.0;
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double arg = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    c += samples[k] * std::cos(arg);
    s += samples[k] * std::sin(arg);
  }
  c *= 2.0 / static_cast<double>(n);
  s *= 2.0 / static_cast<double>(n);
  // A cos(wt + phase) = A cos(phase) cos(wt) - A sin(phase) sin(wt)
  return {std::hypot(c, s), std::atan2(-s, c)};
}

// State layout (dimensionless): x, x', alpha1, beta1, alpha2, beta2, x1, x1', x2, x2'
using OptoState = std::array<double, 10>;

struct OptoSystem {
  double nu;
  double probe_gain;   // acceleration of x' per (beta1 - beta2)
  double mirror_gain;  // acceleration of x1', x2' per alpha
  double drive_freq;
  double drive;        // 0 or 1

  void operator()(const OptoState& s, OptoState& ds, double t) const {
    const double h = drive * std::sin(drive_freq * t);
    ds[0] = nu * s[1];
    ds[1] = probe_gain * (s[3] - s[5]);
    ds[2] = -nu * s[0];
    ds[3] = nu * (s[6] + 0.5 * h);
    ds[4] = nu * s[0];
    ds[5] = nu * (s[8] - 0.5 * h);
    ds[6] = nu * s[7];
    ds[7] = mirror_gain * s[2];
    ds[8] = nu * s[9];
    ds[9] = mirror_gain * s[4];
  }
};

// Differential subspace: alpha2 = -alpha1, beta2 = -beta1, x2 = -x1.
OptoState embed(const Eigen::Matrix<double, 6, 1>& z) {
  return {z(0), z(1), z(2), z(3), -z(2), -z(3), z(4), z(5), -z(4), -z(5)};
}

Eigen::Matrix<double, 6, 1> project(const OptoState& s) {
  Eigen::Matrix<double, 6, 1> z;
  z << s[0], s[1], 0.5 * (s[2] - s[4]), 0.5 * (s[3] - s[5]), 0.5 * (s[6] - s[8]),
      0.5 * (s[7] - s[9]);
  return z;
}

}  // namespace

Oscillation probe_response(const AntennaParams& p, double omega, double h0) {
  if (!(omega > 0.0)) fail(ErrorKind::Domain, "drive frequency must be positive");
  const double nu = characteristic_frequency(p);
  if (!(nu > 0.0)) fail(ErrorKind::Domain, "oracle needs a nonzero circulating energy");
  const double ratio = nu / omega;
  if (ratio >= 0.5 && std::abs(ratio - std::round(ratio)) < 1e-3) {
    fail(ErrorKind::Pole, "periodic response is not unique at omega = nu / k");
  }

  // Per-arm classical amplitude: each arm carries E/2.
  const double amp = std::sqrt(0.5 * p.quanta());
  const double field_rate = p.optical_frequency * amp / p.arm_length;           // 1/(cm s)
  const double force_per_quad = 2.0 * kHbar * p.optical_frequency * amp / p.arm_length;  // dyn

  // Units: length L*h0, velocity L*h0*nu, quadratures field_rate*L*h0/nu.
  const double length = p.arm_length;  // h0 scales out; restored at the end
  const double quad = field_rate * length / nu;
  OptoSystem sys{nu,
                 force_per_quad * quad / (p.probe_mass * length * nu),
                 force_per_quad * quad / (p.mirror_mass * length * nu),
                 omega,
                 1.0};
  // h enters beta' as field_rate * L * h / 2; in these units that is nu * h / 2.

  const double period = kTwoPi / omega;
  const double max_step = kTwoPi / (100.0 * std::max(nu, omega));
  const int steps = std::max(4000, static_cast<int>(std::ceil(period / max_step)) * 8);
  const double dt = period / steps;
  odeint::runge_kutta4<OptoState> stepper;

  auto run_period = [&](OptoState s, double drive, std::vector<double>* trace) {
    OptoSystem local = sys;
    local.drive = drive;
    double t = 0.0;
    for (int k = 0; k < steps; ++k) {
      if (trace) trace->push_back(s[0]);
      stepper.do_step(local, s, t, dt);
      t += dt;
    }
    return s;
  };

  Eigen::Matrix<double, 6, 6> monodromy;
  for (int j = 0; j < 6; ++j) {
    Eigen::Matrix<double, 6, 1> e = Eigen::Matrix<double, 6, 1>::Zero();
    e(j) = 1.0;
    monodromy.col(j) = project(run_period(embed(e), 0.0, nullptr));
  }
  const Eigen::Matrix<double, 6, 1> forced = project(run_period(OptoState{}, 1.0, nullptr));
  const Eigen::Matrix<double, 6, 6> lhs = Eigen::Matrix<double, 6, 6>::Identity() - monodromy;
  const Eigen::Matrix<double, 6, 1> start = lhs.fullPivLu().solve(forced);

  std::vector<double> trace;
  trace.reserve(steps);
  run_period(embed(start), 1.0, &trace);
  Oscillation osc = fundamental(trace);
  osc.amplitude *= length * h0;
  return osc;
}

namespace {

// a1, b1, a2, b2 of the working (1) and buffer (2) cavities.
using CavityState = std::array<double, 4>;

struct CavitySystem {
  double decrement;
  double beat;
  double coupling;  // omega_e q0 / d
  double drive_freq;

  void operator()(const CavityState& s, CavityState& ds, double t) const {
    const double x = std::cos(drive_freq * t);
    ds[0] = -decrement * s[0] - beat * s[3];
    ds[1] = -decrement * s[1] + coupling * x + beat * s[2];
    ds[2] = -beat * s[1];
    ds[3] = beat * s[0];
  }
};

}  // namespace

Oscillation homodyne_response(const SpeedMeterParams& s, double omega, double x0) {
  if (!(omega > 0.0)) fail(ErrorKind::Domain, "drive frequency must be positive");
  const double delta = s.decrement();
  const CavitySystem sys{delta, s.beat_frequency,
                         s.microwave_frequency * s.working_amplitude() / s.tunability_length,
                         omega};

  const double period = kTwoPi / omega;
  const double max_step = kTwoPi / (100.0 * std::max(s.beat_frequency, omega));
  const int steps_per_period = std::max(2000, static_cast<int>(std::ceil(period / max_step)) * 4);
  const double dt = period / steps_per_period;
  // Slowest transient decays at delta / 2.
  const int settle_periods = static_cast<int>(std::ceil(30.0 / (delta * period))) + 1;

  odeint::runge_kutta4<CavityState> stepper;
  CavityState state{};
  double t = 0.0;
  for (int k = 0; k < settle_periods * steps_per_period; ++k) {
    stepper.do_step(sys, state, t, dt);
    t = (k + 1) * dt;
  }

  const double sin_phi = std::sin(s.readout_phase);
  const double cos_phi = std::cos(s.readout_phase);
  const double out_gain = 2.0 * delta * s.impedance;
  std::vector<double> trace;
  trace.reserve(steps_per_period);
  const long base = static_cast<long>(settle_periods) * steps_per_period;
  for (int k = 0; k < steps_per_period; ++k) {
    trace.push_back(-out_gain * state[1] * sin_phi + out_gain * state[0] * cos_phi);
    stepper.do_step(sys, state, t, dt);
    t = (base + k + 1) * dt;
  }
  Oscillation osc = fundamental(trace);
  osc.amplitude *= x0;
  return osc;
}

}  // namespace qnd::oracle
