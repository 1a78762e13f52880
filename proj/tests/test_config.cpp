#include <cmath>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "qnd/commands.hpp"
#include "qnd/config.hpp"
#include "qnd/errors.hpp"
#include "qnd/report.hpp"

using namespace qnd;

namespace {

const char* kBaseline = R"(# baseline parameters
L_cm = 4e5
M_g = 1e4
m_g = 1
omega_o = 2e15
omega_gr = 1e3
energy_erg = 1e6
)";

ErrorKind kind_of_failure(const std::string& text) {
  try {
    (void)parse_config(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Parse;
}

std::string message_of_failure(const std::string& text) {
  try {
    (void)parse_config(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("baseline parameters round-trip into the config") {
  const auto c = parse_config(kBaseline);
  CHECK(c.antenna.arm_length == 4e5);
  CHECK(c.antenna.mirror_mass == 1e4);
  CHECK(c.antenna.probe_mass == 1.0);
  CHECK(c.antenna.optical_frequency == 2e15);
  CHECK(c.antenna.signal_frequency == 1e3);
  CHECK(c.antenna.energy == 1e6);
  CHECK(c.signal.shape() == TemplateShape::RectSine);
  CHECK(c.signal.amplitude() == 1e-21);
  CHECK(c.signal.duration() == doctest::Approx(2 * M_PI * 5 / 1e3));
  CHECK(c.meter.kind == MeterKind::PlainCoordinate);
  CHECK_FALSE(c.speedmeter.has_value());
  CHECK(c.output.format == OutputFormat::Table);
  CHECK(c.warnings.empty());
}

TEST_CASE("empty file lists the required keys") {
  const auto msg = message_of_failure("# nothing\n\n");
  for (const auto& k : required_keys()) CHECK(msg.find(k) != std::string::npos);
  CHECK(kind_of_failure("") == ErrorKind::Validation);
}

TEST_CASE("validation errors name the key") {
  std::string text = kBaseline;
  text.replace(text.find("m_g = 1"), 7, "m_g = -1");
  CHECK(message_of_failure(text).find("m_g") != std::string::npos);
  CHECK(kind_of_failure(text) == ErrorKind::Validation);
  CHECK(message_of_failure(std::string(kBaseline) + "bogus_key = 3\n").find("bogus_key") != std::string::npos);
  CHECK(message_of_failure(std::string(kBaseline) + "meter = quantum\n").find("meter") != std::string::npos);
  CHECK(message_of_failure(std::string(kBaseline) + "meter = speed\n").find("sm_") != std::string::npos);
  CHECK(message_of_failure(std::string(kBaseline) + "meter = custom\n").find("meter_table") != std::string::npos);
  CHECK(message_of_failure(std::string(kBaseline) + "evolve_n = 5\n").find("evolve_n") != std::string::npos);
}

TEST_CASE("parse errors carry the line number") {
  const auto msg = message_of_failure(std::string(kBaseline) + "this line has no equals\n");
  CHECK(msg.find("line 8") != std::string::npos);
  CHECK(kind_of_failure(std::string(kBaseline) + "L_cm = 5\n") == ErrorKind::Parse);
  CHECK(message_of_failure(std::string(kBaseline) + "T_K = warm\n").find("line 8") != std::string::npos);
  CHECK(kind_of_failure(std::string(kBaseline) + "T_K =\n") == ErrorKind::Parse);
}

TEST_CASE("documented defaults and overrides") {
  const auto c = parse_config(std::string(kBaseline) +
                              "template = gaussian_sine\nh0 = 2e-22\ntemplate_tau_s = 0.05\n"
                              "output_format = csv\nT_K = 0.1\n");
  CHECK(c.signal.shape() == TemplateShape::GaussianSine);
  CHECK(c.signal.amplitude() == 2e-22);
  CHECK(c.signal.duration() == 0.05);
  CHECK(c.output.format == OutputFormat::Csv);
  CHECK(c.antenna.temperature == 0.1);
  CHECK(c.antenna.optical_relaxation == 10.0);
  CHECK(c.antenna.mechanical_relaxation == 1e9);

  const auto e = with_override(parse_entries(kBaseline), "energy_erg", "2e6");
  CHECK(build_config(e).antenna.energy == 2e6);
  CHECK_THROWS_AS(with_override(parse_entries(kBaseline), "nope", "1"), Error);
}

TEST_CASE("speed meter section") {
  const auto c = parse_config(std::string(kBaseline) +
                              "meter = speed\nsm_omega_e = 4.3e10\nsm_d_cm = 1\nsm_Omega_e = 3e3\n");
  REQUIRE(c.speedmeter.has_value());
  const auto s = resolve_speed_meter(c);
  CHECK(s.pump_power == doctest::Approx(30139.5).epsilon(1e-4));
  CHECK(1.0 / std::tan(s.readout_phase) == doctest::Approx(-32.0).epsilon(1e-3));
  CHECK(kind_of_failure(std::string(kBaseline) + "sm_omega_e = 4.3e10\n") == ErrorKind::Validation);
  CHECK_THROWS_AS(resolve_speed_meter(parse_config(kBaseline)), Error);
}

TEST_CASE("sweep parsing") {
  const auto s = parse_sweep("energy_erg:1e5:1e7:3:log");
  CHECK(s.key == "energy_erg");
  const auto v = s.values();
  REQUIRE(v.size() == 3);
  CHECK(v[1] == doctest::Approx(1e6));
  CHECK(parse_sweep("omega:1:3:3:lin").values()[1] == doctest::Approx(2.0));
  CHECK_THROWS_AS(parse_sweep("omega:1:3:3"), Error);
  CHECK_THROWS_AS(parse_sweep("omega:-1:3:3:log"), Error);
  CHECK_THROWS_AS(parse_sweep("omega:1:3:2.5:lin"), Error);
  CHECK_THROWS_AS(parse_sweep("omega:1:3:3:cubic"), Error);
}

TEST_CASE("value formatting is fixed at six significant digits") {
  CHECK(format_value(561.231024154686) == "5.61231e+02");
  CHECK(format_value(-3.2e-27) == "-3.20000e-27");
  CHECK(format_value(true) == "true");
  CHECK(format_value(Value()) == "n/a");
  CHECK(format_value(7LL) == "7");
}

TEST_CASE("every command renders CSV that re-parses") {
  const auto entries = parse_entries(std::string(kBaseline) +
                                     "sm_omega_e = 4.3e10\nsm_d_cm = 1\nsm_Omega_e = 3e3\n");
  for (auto cmd : {Command::Budget, Command::Snr, Command::Stability, Command::Regime,
                   Command::Evolve, Command::SpeedMeter}) {
    const auto report = run_invocation(entries, ".", cmd, std::nullopt);
    const auto parsed = parse_csv(render(report, OutputFormat::Csv));
    CHECK_FALSE(parsed.columns.empty());
    CHECK_FALSE(parsed.rows.empty());
    for (const auto& row : parsed.rows) CHECK(row.size() == parsed.columns.size());
    // json-lines: each line is an object.
    const auto jl = render(report, OutputFormat::JsonLines);
    std::size_t start = 0;
    while (start < jl.size()) {
      const auto end = jl.find('\n', start);
      CHECK(nlohmann::json::parse(jl.substr(start, end - start)).is_object());
      start = end + 1;
    }
  }
}

TEST_CASE("config sweeps put the sweep variable first") {
  const auto entries = parse_entries(kBaseline);
  const auto r = run_invocation(entries, ".", Command::Budget, parse_sweep("omega_gr:1e3:1e4:2:log"));
  REQUIRE(r.table.has_value());
  CHECK(r.table->columns.front() == "omega_gr");
  const auto csv = parse_csv(render(r, OutputFormat::Csv));
  CHECK(csv.rows.size() == 2);
  CHECK(csv.rows[1][0] == "1.00000e+04");
  CHECK_THROWS_AS(run_invocation(entries, ".", Command::Evolve, parse_sweep("omega_gr:1:2:2:lin")), Error);
  CHECK_THROWS_AS(run_invocation(entries, ".", Command::Budget, parse_sweep("bogus:1:2:2:lin")), Error);
}

TEST_CASE("evolve reports exact and formula probabilities") {
  const auto r = run_command(parse_config(kBaseline), Command::Evolve);
  REQUIRE(r.table.has_value());
  REQUIRE(r.table->rows.size() == 1);
  CHECK(format_value(r.table->rows[0][1]) == "9.96671e-03");
  CHECK(format_value(r.table->rows[0][2]) == "1.00000e-02");
}

TEST_CASE("csv parser rejects malformed input") {
  CHECK_THROWS_AS(parse_csv(""), Error);
  CHECK_THROWS_AS(parse_csv("a,b\n1,2,3\n"), Error);
  CHECK_THROWS_AS(parse_csv("a,b\n1,\n"), Error);
  CHECK_NOTHROW(parse_csv("# k = v\na,b\n1.0e+00,n/a\n"));
}
