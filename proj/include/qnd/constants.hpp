#pragma once

// CGS units throughout: erg, cm, g, s, dyn.
namespace qnd {

inline constexpr double kHbar = 1.054571817e-27;      // erg s
inline constexpr double kBoltzmann = 1.380649e-16;    // erg / K
inline constexpr double kPi = 3.14159265358979323846;

}  // namespace qnd
