#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "qnd/constants.hpp"
#include "qnd/errors.hpp"
#include "qnd/noise_budget.hpp"
#include "support.hpp"

using namespace qnd;
using qnd::test::rel;
using qnd::test::baseline;

namespace {


// Composite Simpson of h(t) exp(-i w t) over the template support.
std::complex<double> spectrum_oracle(const SignalTemplate& t, double w) {
  const auto [a, b] = t.support();
  const int n = 200000;
  const double dt = (b - a) / n;
  std::complex<double> sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = a + i * dt;
    const double wt = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += wt * t.value(x) * std::polar(1.0, -w * x);
  }
  return sum * dt / 3.0;
}

// Same SNR integral on a fine log grid with the trapezoid rule.
double snr_oracle(const AntennaParams& p, const MeterModel& meter, const SignalTemplate& t) {
  const double nu6 = std::pow(characteristic_frequency(p), 6);
  const double s_m = 2 * kBoltzmann * p.temperature * p.probe_mass / p.mechanical_relaxation;
  const double lo = std::log(p.signal_frequency / 50), hi = std::log(p.signal_frequency * 50);
  const int n = 400000;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double u = lo + (hi - lo) * i / n;
    const double w = std::exp(u);
    const auto d = evaluate(meter, w);
    const double s_o = kHbar * p.optical_frequency * p.energy /
                       (p.arm_length * p.arm_length * p.optical_relaxation * w * w);
    const double gap = nu6 - std::pow(w, 6);
    const double den = p.probe_mass * p.probe_mass * gap * gap * d.position +
                       2 * p.probe_mass * std::pow(w, 4) * gap * d.cross +
                       std::pow(w, 8) * (d.force + s_m + s_o);
    const double f = std::pow(w, 6) * std::norm(t.spectrum(w)) / den * w;  // d omega = w du
    sum += (i == 0 || i == n ? 0.5 : 1.0) * f;
  }
  sum *= (hi - lo) / n;
  return std::pow(p.optical_frequency * p.energy / p.arm_length, 2) * 2 * sum / (2 * kPi);
}

}  // namespace

TEST_CASE("energy limits") {
  auto p = baseline();
  const auto q = quantum_limits(p);
  CHECK(q.energy_uncertainty == doctest::Approx(0.0410769388732900).epsilon(1e-12));
  CHECK(q.sql_energy == doctest::Approx(8e8).epsilon(1e-12));
  CHECK(q.displacement_sql * q.momentum_perturbation == doctest::Approx(kHbar));
  CHECK(q.coherent_energy_uncertainty == doctest::Approx(std::sqrt(kHbar * 2e15 * 1e6)));
  p.signal_frequency = 1e4;
  CHECK(quantum_limits(p).sql_energy == doctest::Approx(8e11).epsilon(1e-12));
}

TEST_CASE("closed-form strain limits") {
  const auto p = baseline();
  CHECK(sql_strain(p, p.mirror_mass) == doctest::Approx(4.58039732884812e-24).epsilon(1e-12));
  CHECK(h_opt_limit(p) == doctest::Approx(1.29553200470290e-24).epsilon(1e-12));
  const auto mech = h_mech_limit(p);
  CHECK(mech.value == doctest::Approx(1.18588259256945e-24).epsilon(1e-12));
  CHECK(rel(mech.nu_form, mech.value) < 1e-12);
  const auto plain = h_meter_plain(p);
  CHECK(rel(plain.nu_form, plain.h_meter) < 1e-12);
  const NoiseDensities d{plain.meter.position, plain.meter.force, 0.0};
  CHECK(std::abs(d.position * d.force / (kHbar * kHbar / 4) - 1.0) < 1e-12);
  CHECK(h_meter_speed(p).h_meter == std::numbers::sqrt2 * sql_strain(p, p.mirror_mass));
  CHECK_FALSE(h_meter_speed(p).tuning.has_value());
  CHECK(h_meter_speed(p, TransducerGeometry{1.0, 3e3, 4.3e10}).tuning.has_value());
}

TEST_CASE("noise densities") {
  const auto p = baseline();
  CHECK(mechanical_noise_density(p) == doctest::Approx(2 * kBoltzmann * 4 / 1e9));
  CHECK(optical_noise_density(p, 1e3) == doctest::Approx(kHbar * 2e15 * 1e6 / (1.6e11 * 10 * 1e6)));
  CHECK_THROWS_AS(optical_noise_density(p, 0.0), Error);
}

TEST_CASE("velocity resolution and dissipation thresholds") {
  const auto p = baseline();
  const auto v = velocity_resolution(p);
  CHECK(v.ratio == doctest::Approx(std::pow(561.231024154686 / 1e3, 3)));
  CHECK(v.probe == doctest::Approx(v.ratio * v.sql));
  const auto t = dissipation_thresholds(p);
  CHECK(t.optical_min == doctest::Approx(0.8));
  CHECK(t.mechanical_min ==
        doctest::Approx(8 * kBoltzmann * 4 * 1e12 / (kHbar * std::pow(561.231024154686, 6))).epsilon(1e-10));
}

TEST_CASE("template spectra agree with direct quadrature") {
  for (auto shape : {TemplateShape::RectSine, TemplateShape::GaussianSine}) {
    const SignalTemplate t(shape, 1.0, 1e3, 2 * kPi * 5 / 1e3);
    for (double w : {100.0, 800.0, 1e3, 1.7e3, 5e3}) {
      const auto a = t.spectrum(w);
      const auto b = spectrum_oracle(t, w);
      CHECK(std::abs(a - b) < 1e-8 * std::abs(t.spectrum(1e3)));
    }
  }
}

TEST_CASE("template energy obeys Parseval") {
  for (auto shape : {TemplateShape::RectSine, TemplateShape::GaussianSine}) {
    const SignalTemplate t(shape, 2.0, 1e3, 0.02);
    // integral over all omega of |H|^2 / 2 pi, even in omega.
    const int n = 400000;
    const double top = 2e5;
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double w = top * i / n;
      sum += (i == 0 || i == n ? 0.5 : 1.0) * std::norm(t.spectrum(w));
    }
    const double parseval = 2 * sum * (top / n) / (2 * kPi);
    CHECK(rel(parseval, t.energy()) < 2e-3);
  }
  CHECK_THROWS_AS(SignalTemplate(TemplateShape::RectSine, 1.0, -1.0, 1.0), Error);
}

TEST_CASE("tabulated meter") {
  const double sx = kHbar / 2, sf = kHbar / 2;
  TabulatedMeter t({10.0, 1000.0}, {{sx, sf, 0.0}, {4 * sx, 4 * sf, 0.0}});
  CHECK(t.at(10.0).position == doctest::Approx(sx));
  CHECK(t.at(1000.0).force == doctest::Approx(4 * sf));
  CHECK(t.at(100.0).position == doctest::Approx(2.5 * sx));  // halfway in log omega
  CHECK_THROWS_AS(t.at(5.0), Error);
  CHECK_THROWS_AS(TabulatedMeter({10.0, 10.0}, {{sx, sf, 0.0}, {sx, sf, 0.0}}), Error);
  CHECK_THROWS_AS(TabulatedMeter({10.0}, {{sx, sf, 0.0}}), Error);
  try {
    TabulatedMeter({1.0, 2.0}, {{sx, sf, 0.0}, {sx / 2, sf, 0.0}});
    FAIL("expected a model error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Model);
  }
}

TEST_CASE("snr matches an independent quadrature") {
  const auto p = baseline();
  const MeterModel plain = h_meter_plain(p).meter;
  for (auto shape : {TemplateShape::RectSine, TemplateShape::GaussianSine}) {
    const SignalTemplate t(shape, 1e-22, 1e3, p.signal_duration);
    CHECK(rel(snr(p, plain, t), snr_oracle(p, plain, t)) < 1e-4);
  }
}

TEST_CASE("snr is quadratic in h0 and detection amplitude gives snr = 1") {
  const auto p = baseline();
  const MeterModel plain = h_meter_plain(p).meter;
  const SignalTemplate t(TemplateShape::RectSine, 1e-22, 1e3, p.signal_duration);
  const double s1 = snr(p, plain, t);
  CHECK(rel(snr(p, plain, t.with_amplitude(3e-22)), 9 * s1) < 1e-12);
  const double h = detection_amplitude(p, plain, t);
  CHECK(snr(p, plain, t.with_amplitude(h)) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("snr rejects a meter below the uncertainty bound") {
  const auto p = baseline();
  const SignalTemplate t(TemplateShape::RectSine, 1e-22, 1e3, p.signal_duration);
  try {
    (void)snr(p, PlainMeter{1e-40, 1e-20}, t);
    FAIL("expected a model error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Model);
  }
}

TEST_CASE("extra noise lowers the snr") {
  const auto p = baseline();
  const MeterModel plain = h_meter_plain(p).meter;
  const SignalTemplate t(TemplateShape::RectSine, 1e-22, 1e3, p.signal_duration);
  SnrOptions quiet;
  quiet.include_mechanical = false;
  quiet.include_optical = false;
  CHECK(snr(p, plain, t, quiet) > snr(p, plain, t));
}

TEST_CASE("noise budget assembly") {
  const auto p = baseline();
  const SignalTemplate t(TemplateShape::RectSine, 1e-21, 1e3, p.signal_duration);
  const auto b = compute_noise_budget(p, h_meter_plain(p).meter, t);
  CHECK(b.stable);
  CHECK(b.meter == MeterKind::PlainCoordinate);
  CHECK(b.h_total == doctest::Approx(std::sqrt(b.h_meter * b.h_meter + b.h_mech * b.h_mech +
                                               b.h_opt * b.h_opt)));
  REQUIRE(b.snr.has_value());
  CHECK(rel(*b.detection_amplitude, detection_amplitude(p, h_meter_plain(p).meter, t)) < 1e-9);
  CHECK(b.h_total >= b.h_meter);

  // A custom table equal to the plain optimum reproduces the quantum-only
  // detection amplitude.
  const auto pm = h_meter_plain(p).meter;
  const TabulatedMeter table({1.0, 1e6}, {{pm.position, pm.force, 0.0}, {pm.position, pm.force, 0.0}});
  const auto c = compute_noise_budget(p, table, t);
  CHECK(c.meter == MeterKind::Custom);
  SnrOptions quiet;
  quiet.include_mechanical = false;
  quiet.include_optical = false;
  CHECK(rel(c.h_meter, detection_amplitude(p, pm, t, quiet)) < 1e-9);
  CHECK_THROWS_AS(compute_noise_budget(p, table, std::nullopt), Error);
}
