#pragma once

#include <cmath>
#include <numbers>

#include "qnd/optomech.hpp"

namespace qnd::test {

// Baseline antenna: L = 4e5 cm, M = 1e4 g, m = 1 g, omega_o = 2e15,
// omega_gr = 1e3, E = 1e6 erg, five-cycle template duration.
inline AntennaParams baseline() {
  AntennaParams p{};
  p.arm_length = 4e5;
  p.mirror_mass = 1e4;
  p.probe_mass = 1.0;
  p.optical_frequency = 2e15;
  p.signal_frequency = 1e3;
  p.signal_duration = 2.0 * std::numbers::pi * 5.0 / 1e3;
  p.energy = 1e6;
  p.optical_relaxation = 10.0;
  p.mechanical_relaxation = 1e9;
  p.temperature = 4.0;
  p.optical_beat = 1e4;
  return p;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace qnd::test
