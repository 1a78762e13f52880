#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qnd/optomech.hpp"
#include "qnd/speed_meter.hpp"

namespace qnd {

// ---------------------------------------------------------------------------
// Meter models

/// Frequency-independent S_x, S_F with no cross-correlation.
struct PlainMeter {
  double position;
  double force;
};

struct SpeedMeterModel {
  SpeedMeterParams params;
};

/// Tabulated densities, linearly interpolated in log(omega). Every node must
/// satisfy the uncertainty bound; evaluation outside the grid is a Model error.
class TabulatedMeter {
 public:
  TabulatedMeter(std::vector<double> omega, std::vector<NoiseDensities> nodes);

  NoiseDensities at(double omega) const;
  double min_frequency() const { return omega_.front(); }
  double max_frequency() const { return omega_.back(); }
  std::size_t size() const { return omega_.size(); }

 private:
  std::vector<double> omega_;
  std::vector<NoiseDensities> nodes_;
};

enum class MeterKind { PlainCoordinate, SpeedMeter, Custom };

using MeterModel = std::variant<PlainMeter, SpeedMeterModel, TabulatedMeter>;

MeterKind kind_of(const MeterModel& meter);
std::string to_string(MeterKind kind);

NoiseDensities evaluate(const MeterModel& meter, double omega);

/// Relative slack allowed below hbar^2 / 4 before a model is rejected.
inline constexpr double kUncertaintySlack = 1e-9;

/// Throws Model if S_x S_F - S_xF^2 < (hbar^2 / 4)(1 - kUncertaintySlack).
void require_uncertainty_bound(const NoiseDensities& d, double omega);

// ---------------------------------------------------------------------------
// Signal templates

enum class TemplateShape { RectSine, GaussianSine };

/// h(t) = h0 sin(omega_gr t) on [0, tau]            (RectSine)
/// h(t) = h0 sin(omega_gr t) exp(-t^2 / (2 s^2)),   s = tau / 4   (GaussianSine)
class SignalTemplate {
 public:
  SignalTemplate(TemplateShape shape, double amplitude, double frequency, double duration);

  TemplateShape shape() const { return shape_; }
  double amplitude() const { return amplitude_; }
  double frequency() const { return frequency_; }
  double duration() const { return duration_; }

  SignalTemplate with_amplitude(double amplitude) const;

  double value(double t) const;

  /// Closed-form transform  integral h(t) exp(-i omega t) dt.
  std::complex<double> spectrum(double omega) const;

  /// integral h(t)^2 dt.
  double energy() const;

  /// Interval outside of which h(t) is zero (or below 1e-30 relative).
  std::pair<double, double> support() const;

 private:
  TemplateShape shape_;
  double amplitude_;
  double frequency_;
  double duration_;
};

std::string to_string(TemplateShape shape);

// ---------------------------------------------------------------------------
// Closed-form limits

struct QuantumLimits {
  double displacement_sql;          // Delta x_SQL(M) = sqrt(hbar / (M omega_gr^2 tau_gr)), cm
  double momentum_perturbation;     // Delta p = sqrt(hbar M omega_gr^2 tau_gr), g cm/s
  double energy_uncertainty;        // Delta E = L sqrt(hbar M omega_gr^3), erg
  double sql_energy;                // E_SQL = M L^2 omega_gr^3 / omega_o, erg
  double coherent_energy_uncertainty;  // sqrt(hbar omega_o E), erg
};

QuantumLimits quantum_limits(const AntennaParams& p);

/// h_SQL(mass) = sqrt(hbar / (mass omega_gr^2 tau_gr)) / L.
double sql_strain(const AntennaParams& p, double mass);

/// S_m = 2 kT m / tau_m*.
double mechanical_noise_density(const AntennaParams& p);

/// S_o = hbar omega_o E / (L^2 tau_o* omega^2). Throws Domain at omega = 0.
double optical_noise_density(const AntennaParams& p, double omega);

struct MechanicalLimit {
  double value;    // (L omega_gr / (E omega_o)) sqrt(2kTm / (tau_m* tau_gr))
  double nu_form;  // (sqrt(2) / L)(omega_gr / nu^3) sqrt(2kT / (tau_m* tau_gr M))
};

MechanicalLimit h_mech_limit(const AntennaParams& p);

/// sqrt(1 / (omega_o^2 tau_o* tau_gr N)).
double h_opt_limit(const AntennaParams& p);

struct PlainMeterOptimum {
  double h_meter;  // (L / (omega_o E)) sqrt(hbar m omega_gr^4 / tau_gr)
  double nu_form;  // sqrt(2) (omega_gr / nu)^3 h_SQL(M)
  PlainMeter meter;  // S_F = hbar m omega_gr^2 / 2, S_x = hbar / (2 m omega_gr^2)
};

PlainMeterOptimum h_meter_plain(const AntennaParams& p);

struct SpeedMeterOptimum {
  double h_meter;  // sqrt(2) h_SQL(M)
  std::optional<SpeedMeterTuning> tuning;
};

/// Tuning is filled when a geometry is supplied; throws Tuning if unstable.
SpeedMeterOptimum h_meter_speed(const AntennaParams& p,
                                const std::optional<TransducerGeometry>& geometry = {});

struct VelocityResolution {
  double probe;  // Delta v_m = (nu / omega_gr)^3 Delta v_SQL
  double sql;    // sqrt(hbar / (m tau_gr))
  double ratio;
};

VelocityResolution velocity_resolution(const AntennaParams& p);

struct DissipationThresholds {
  double mechanical_min;  // tau_m* from 2kT / tau_m* < hbar nu^6 / (4 omega_gr^4)
  double optical_min;     // tau_o* from tau_o* > E_SQL / (E omega_gr)
};

DissipationThresholds dissipation_thresholds(const AntennaParams& p);

// ---------------------------------------------------------------------------
// Signal-to-noise integral

struct SnrOptions {
  double band_low_factor = 1.0 / 50.0;   // lower edge, times omega_gr
  double band_high_factor = 50.0;        // upper edge, times omega_gr
  double relative_tolerance = 1e-6;
  bool include_mechanical = true;
  bool include_optical = true;
};

/// (omega_o^2 E^2 / L^2) integral over both signs of omega of
///   omega^6 |h(omega)|^2 / (m^2 (nu^6 - omega^6)^2 S_x
///                           + 2 m omega^4 (nu^6 - omega^6) S_xF
///                           + omega^8 (S_F + S_m + S_o))   d omega / 2 pi
/// The integrand is even; the positive half is integrated adaptively and
/// doubled. Throws Model on an uncertainty-violating meter or a
/// nonpositive denominator.
double snr(const AntennaParams& p, const MeterModel& meter, const SignalTemplate& tmpl,
           const SnrOptions& options = {});

/// Template amplitude giving snr = 1 (snr is quadratic in h0).
double detection_amplitude(const AntennaParams& p, const MeterModel& meter,
                           const SignalTemplate& tmpl, const SnrOptions& options = {});

// ---------------------------------------------------------------------------

struct NoiseBudget {
  double nu;
  bool stable;
  double stability_margin;
  MeterKind meter;
  double h_mech;
  double h_opt;
  double h_meter;
  double h_total;
  double energy_uncertainty;
  double sql_energy;
  double h_sql_mirror;
  double h_sql_probe;
  double displacement_sql;
  double velocity_ratio;
  DissipationThresholds thresholds;
  std::optional<SpeedMeterTuning> speed_tuning;
  std::optional<double> snr;
  std::optional<double> detection_amplitude;
};

/// h_meter is the closed-form optimum for plain and speed meters. A custom
/// meter has no closed form; its h_meter is the snr = 1 amplitude of the
/// template with mechanical and optical noise switched off.
NoiseBudget compute_noise_budget(const AntennaParams& p, const MeterModel& meter,
                                 const std::optional<SignalTemplate>& tmpl,
                                 const std::optional<TransducerGeometry>& geometry = {});

}  // namespace qnd
