#include "qnd/noise_budget.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qnd/constants.hpp"
#include "qnd/errors.hpp"

namespace qnd {

namespace {

std::string format_g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

// --- meters ----------------------------------------------------------------

void require_uncertainty_bound(const NoiseDensities& d, double omega) {
  const double bound = 0.25 * kHbar * kHbar;
  const double det = d.position * d.force - d.cross * d.cross;
  if (!(det >= bound * (1.0 - kUncertaintySlack))) {
    fail(ErrorKind::Model, "meter violates S_x S_F - S_xF^2 >= hbar^2/4 at omega=" +
                               format_g(omega) + " (ratio " + format_g(det / bound) + ")");
  }
}

TabulatedMeter::TabulatedMeter(std::vector<double> omega, std::vector<NoiseDensities> nodes)
    : omega_(std::move(omega)), nodes_(std::move(nodes)) {
  if (omega_.size() < 2 || omega_.size() != nodes_.size()) {
    fail(ErrorKind::Model, "tabulated meter needs at least two nodes with matching lengths");
  }
  for (std::size_t i = 0; i < omega_.size(); ++i) {
    if (!(omega_[i] > 0.0)) fail(ErrorKind::Model, "tabulated frequencies must be positive");
    if (i > 0 && !(omega_[i] > omega_[i - 1])) {
      fail(ErrorKind::Model, "tabulated frequencies must be strictly increasing");
    }
    require_uncertainty_bound(nodes_[i], omega_[i]);
  }
}

NoiseDensities TabulatedMeter::at(double omega) const {
  if (omega < omega_.front() || omega > omega_.back()) {
    fail(ErrorKind::Model, "omega=" + format_g(omega) + " outside tabulated range [" +
                               format_g(omega_.front()) + ", " + format_g(omega_.back()) + "]");
  }
  auto upper = std::upper_bound(omega_.begin(), omega_.end(), omega);
  if (upper == omega_.end()) return nodes_.back();
  const auto hi = static_cast<std::size_t>(upper - omega_.begin());
  const auto lo = hi - 1;
  const double w = std::log(omega / omega_[lo]) / std::log(omega_[hi] / omega_[lo]);
  const auto& a = nodes_[lo];
  const auto& b = nodes_[hi];
  return {a.position + w * (b.position - a.position), a.force + w * (b.force - a.force),
          a.cross + w * (b.cross - a.cross)};
}

MeterKind kind_of(const MeterModel& meter) {
  switch (meter.index()) {
    case 0: return MeterKind::PlainCoordinate;
    case 1: return MeterKind::SpeedMeter;
    default: return MeterKind::Custom;
  }
}

std::string to_string(MeterKind kind) {
  switch (kind) {
    case MeterKind::PlainCoordinate: return "plain";
    case MeterKind::SpeedMeter: return "speed";
    case MeterKind::Custom: return "custom";
  }
  return "unknown";
}

NoiseDensities evaluate(const MeterModel& meter, double omega) {
  struct Visitor {
    double omega;
    NoiseDensities operator()(const PlainMeter& m) const { return {m.position, m.force, 0.0}; }
    NoiseDensities operator()(const SpeedMeterModel& m) const {
      return noise_spectra(m.params, omega);
    }
    NoiseDensities operator()(const TabulatedMeter& m) const { return m.at(omega); }
  };
  return std::visit(Visitor{omega}, meter);
}

// --- templates -------------------------------------------------------------

SignalTemplate::SignalTemplate(TemplateShape shape, double amplitude, double frequency,
                               double duration)
    : shape_(shape), amplitude_(amplitude), frequency_(frequency), duration_(duration) {
  if (!(frequency > 0.0)) fail(ErrorKind::Validation, "template frequency must be positive");
  if (!(duration > 0.0)) fail(ErrorKind::Validation, "template duration must be positive");
  if (!std::isfinite(amplitude)) fail(ErrorKind::Validation, "template amplitude must be finite");
}

SignalTemplate SignalTemplate::with_amplitude(double amplitude) const {
  return {shape_, amplitude, frequency_, duration_};
}

double SignalTemplate::value(double t) const {
  switch (shape_) {
    case TemplateShape::RectSine:
      return (t >= 0.0 && t <= duration_) ? amplitude_ * std::sin(frequency_ * t) : 0.0;
    case TemplateShape::GaussianSine: {
      const double s = 0.25 * duration_;
      return amplitude_ * std::sin(frequency_ * t) * std::exp(-t * t / (2.0 * s * s));
    }
  }
  return 0.0;
}

std::complex<double> SignalTemplate::spectrum(double omega) const {
  using namespace std::complex_literals;
  switch (shape_) {
    case TemplateShape::RectSine: {
      // integral_0^tau exp(i k t) dt
      auto window = [tau = duration_](double k) {
        const double half = 0.5 * k * tau;
        const double sinc = std::abs(half) < 1e-8 ? 1.0 - half * half / 6.0 : std::sin(half) / half;
        return tau * std::polar(1.0, half) * sinc;
      };
      return amplitude_ * (window(frequency_ - omega) - window(-frequency_ - omega)) / 2i;
    }
    case TemplateShape::GaussianSine: {
      const double s = 0.25 * duration_;
      auto gauss = [s](double k) {
        return s * std::sqrt(2.0 * std::numbers::pi) * std::exp(-0.5 * s * s * k * k);
      };
      return amplitude_ * (gauss(frequency_ - omega) - gauss(frequency_ + omega)) / 2i;
    }
  }
  return 0.0;
}

double SignalTemplate::energy() const {
  const double h2 = amplitude_ * amplitude_;
  switch (shape_) {
    case TemplateShape::RectSine:
      return h2 * (0.5 * duration_ - std::sin(2.0 * frequency_ * duration_) / (4.0 * frequency_));
    case TemplateShape::GaussianSine: {
      const double s = 0.25 * duration_;
      return 0.5 * h2 * s * std::sqrt(std::numbers::pi) *
             (1.0 - std::exp(-s * s * frequency_ * frequency_));
    }
  }
  return 0.0;
}

std::pair<double, double> SignalTemplate::support() const {
  if (shape_ == TemplateShape::RectSine) return {0.0, duration_};
  const double s = 0.25 * duration_;
  return {-12.0 * s, 12.0 * s};
}

std::string to_string(TemplateShape shape) {
  return shape == TemplateShape::RectSine ? "rect_sine" : "gaussian_sine";
}

// --- closed-form limits ----------------------------------------------------

double sql_strain(const AntennaParams& p, double mass) {
  const double w = p.signal_frequency;
  return std::sqrt(kHbar / (mass * w * w * p.signal_duration)) / p.arm_length;
}

QuantumLimits quantum_limits(const AntennaParams& p) {
  const double w = p.signal_frequency;
  const double m = p.mirror_mass;
  const double l = p.arm_length;
  return {
      std::sqrt(kHbar / (m * w * w * p.signal_duration)),
      std::sqrt(kHbar * m * w * w * p.signal_duration),
      l * std::sqrt(kHbar * m * w * w * w),
      m * l * l * w * w * w / p.optical_frequency,
      std::sqrt(kHbar * p.optical_frequency * p.energy),
  };
}

double mechanical_noise_density(const AntennaParams& p) {
  return 2.0 * kBoltzmann * p.temperature * p.probe_mass / p.mechanical_relaxation;
}

double optical_noise_density(const AntennaParams& p, double omega) {
  if (omega == 0.0) fail(ErrorKind::Domain, "optical noise density diverges at omega = 0");
  return kHbar * p.optical_frequency * p.energy /
         (p.arm_length * p.arm_length * p.optical_relaxation * omega * omega);
}

MechanicalLimit h_mech_limit(const AntennaParams& p) {
  const double w = p.signal_frequency;
  const double thermal = 2.0 * kBoltzmann * p.temperature;
  const double direct = p.arm_length * w / (p.energy * p.optical_frequency) *
                        std::sqrt(thermal * p.probe_mass /
                                  (p.mechanical_relaxation * p.signal_duration));
  const double nu3 = std::pow(characteristic_frequency(p), 3);
  const double via_nu = std::numbers::sqrt2 / p.arm_length * (w / nu3) *
                        std::sqrt(thermal / (p.mechanical_relaxation * p.signal_duration *
                                             p.mirror_mass));
  return {direct, via_nu};
}

double h_opt_limit(const AntennaParams& p) {
  const double w = p.optical_frequency;
  return std::sqrt(1.0 / (w * w * p.optical_relaxation * p.signal_duration * p.quanta()));
}

PlainMeterOptimum h_meter_plain(const AntennaParams& p) {
  const double w = p.signal_frequency;
  const double m = p.probe_mass;
  const double direct = p.arm_length / (p.optical_frequency * p.energy) *
                        std::sqrt(kHbar * m * w * w * w * w / p.signal_duration);
  const double nu = characteristic_frequency(p);
  const double via_nu = std::numbers::sqrt2 * std::pow(w / nu, 3) * sql_strain(p, p.mirror_mass);
  return {direct, via_nu, PlainMeter{kHbar / (2.0 * m * w * w), 0.5 * kHbar * m * w * w}};
}

SpeedMeterOptimum h_meter_speed(const AntennaParams& p,
                                const std::optional<TransducerGeometry>& geometry) {
  SpeedMeterOptimum out{std::numbers::sqrt2 * sql_strain(p, p.mirror_mass), std::nullopt};
  if (geometry) out.tuning = optimal_tuning(p, *geometry);
  return out;
}

VelocityResolution velocity_resolution(const AntennaParams& p) {
  const double ratio = std::pow(characteristic_frequency(p) / p.signal_frequency, 3);
  const double sql = std::sqrt(kHbar / (p.probe_mass * p.signal_duration));
  return {ratio * sql, sql, ratio};
}

DissipationThresholds dissipation_thresholds(const AntennaParams& p) {
  const double nu6 = std::pow(characteristic_frequency(p), 6);
  const double w4 = std::pow(p.signal_frequency, 4);
  const double mech = 2.0 * kBoltzmann * p.temperature * 4.0 * w4 / (kHbar * nu6);
  const double opt = quantum_limits(p).sql_energy / (p.energy * p.signal_frequency);
  return {mech, opt};
}

// --- SNR -------------------------------------------------------------------

double snr(const AntennaParams& p, const MeterModel& meter, const SignalTemplate& tmpl,
           const SnrOptions& options) {
  const double nu = characteristic_frequency(p);
  const double nu6 = std::pow(nu, 6);
  const double m = p.probe_mass;
  const double s_m = options.include_mechanical ? mechanical_noise_density(p) : 0.0;

  auto integrand = [&](double w) {
    const NoiseDensities d = evaluate(meter, w);
    require_uncertainty_bound(d, w);
    const double s_o = options.include_optical ? optical_noise_density(p, w) : 0.0;
    const double w2 = w * w;
    const double w4 = w2 * w2;
    const double w6 = w4 * w2;
    const double gap = nu6 - w6;
    const double den = m * m * gap * gap * d.position + 2.0 * m * w4 * gap * d.cross +
                       w4 * w4 * (d.force + s_m + s_o);
    if (!(den > 0.0)) {
      fail(ErrorKind::Model, "SNR denominator is not positive at omega=" + format_g(w));
    }
    return w6 * std::norm(tmpl.spectrum(w)) / den;
  };

  const double lo = options.band_low_factor * p.signal_frequency;
  const double hi = options.band_high_factor * p.signal_frequency;
  // Log-spaced panels resolve the template's sidelobes; nu and omega_gr are
  // added as breakpoints.
  constexpr int kPanels = 256;
  std::vector<double> edges;
  edges.reserve(kPanels + 3);
  for (int i = 0; i <= kPanels; ++i) {
    edges.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / kPanels));
  }
  for (double extra : {nu, p.signal_frequency}) {
    if (extra > lo && extra < hi) edges.push_back(extra);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    total += Quad::integrate(integrand, edges[i], edges[i + 1], 15, options.relative_tolerance);
  }
  const double prefactor = std::pow(p.optical_frequency * p.energy / p.arm_length, 2);
  return prefactor * 2.0 * total / (2.0 * std::numbers::pi);
}

double detection_amplitude(const AntennaParams& p, const MeterModel& meter,
                           const SignalTemplate& tmpl, const SnrOptions& options) {
  const SignalTemplate unit = tmpl.with_amplitude(1.0);
  const double value = snr(p, meter, unit, options);
  if (!(value > 0.0)) fail(ErrorKind::Model, "template produces zero SNR");
  return 1.0 / std::sqrt(value);
}

// --- budget ----------------------------------------------------------------

NoiseBudget compute_noise_budget(const AntennaParams& p, const MeterModel& meter,
                                 const std::optional<SignalTemplate>& tmpl,
                                 const std::optional<TransducerGeometry>& geometry) {
  NoiseBudget b{};
  const auto stability = stability_check(p);
  const auto limits = quantum_limits(p);
  b.nu = stability.nu;
  b.stable = stability.stable;
  b.stability_margin = stability.margin;
  b.meter = kind_of(meter);
  b.h_mech = h_mech_limit(p).value;
  b.h_opt = h_opt_limit(p);
  b.energy_uncertainty = limits.energy_uncertainty;
  b.sql_energy = limits.sql_energy;
  b.h_sql_mirror = sql_strain(p, p.mirror_mass);
  b.h_sql_probe = sql_strain(p, p.probe_mass);
  b.displacement_sql = limits.displacement_sql;
  b.velocity_ratio = velocity_resolution(p).ratio;
  b.thresholds = dissipation_thresholds(p);

  switch (b.meter) {
    case MeterKind::PlainCoordinate:
      b.h_meter = h_meter_plain(p).h_meter;
      break;
    case MeterKind::SpeedMeter: {
      const auto& s = std::get<SpeedMeterModel>(meter).params;
      const auto g = geometry.value_or(
          TransducerGeometry{s.tunability_length, s.beat_frequency, s.microwave_frequency});
      const auto opt = h_meter_speed(p, b.stable ? std::optional(g) : std::nullopt);
      b.h_meter = opt.h_meter;
      b.speed_tuning = opt.tuning;
      break;
    }
    case MeterKind::Custom: {
      if (!tmpl) fail(ErrorKind::Model, "a custom meter budget needs a signal template");
      SnrOptions quantum_only;
      quantum_only.include_mechanical = false;
      quantum_only.include_optical = false;
      b.h_meter = detection_amplitude(p, meter, *tmpl, quantum_only);
      break;
    }
  }
  if (b.meter != MeterKind::SpeedMeter && geometry && b.stable) {
    b.speed_tuning = optimal_tuning(p, *geometry);
  }
  b.h_total = std::sqrt(b.h_meter * b.h_meter + b.h_mech * b.h_mech + b.h_opt * b.h_opt);

  if (tmpl) {
    b.snr = snr(p, meter, *tmpl);
    b.detection_amplitude = tmpl->amplitude() > 0.0 && *b.snr > 0.0
                                ? tmpl->amplitude() / std::sqrt(*b.snr)
                                : detection_amplitude(p, meter, *tmpl);
  }
  return b;
}

}  // namespace qnd
