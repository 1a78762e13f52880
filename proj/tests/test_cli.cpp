// Runs the qndtool binary against the shipped configs and golden outputs.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "qnd/report.hpp"

namespace {

const std::string kTool = QNDTOOL_PATH;
const std::string kGolden = GOLDEN_DIR;

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = kTool + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string cfg(const std::string& name) { return "--config " + kGolden + "/" + name; }

void check_golden(const std::string& args, const std::string& golden) {
  const auto r = run(args);
  REQUIRE(r.status == 0);
  CHECK(r.out == slurp(kGolden + "/" + golden));
}

}  // namespace

TEST_CASE("budget output is byte-deterministic") {
  const auto a = run(cfg("ligo_like.cfg") + " --command budget --format csv");
  const auto b = run(cfg("ligo_like.cfg") + " --command budget --format csv");
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("golden outputs") {
  check_golden(cfg("ligo_like.cfg") + " --command budget --format csv", "budget_plain.csv");
  check_golden(cfg("ligo_like.cfg") + " --command budget", "budget_plain.txt");
  check_golden(cfg("ligo_like.cfg") + " --command budget --format csv --sweep omega_gr:1e3:1e4:2:log",
               "budget_omega_gr_sweep.csv");
  check_golden(cfg("ligo_like_speed.cfg") + " --command budget --format csv", "budget_speed.csv");
  check_golden(cfg("ligo_like_speed.cfg") + " --command speedmeter --format csv", "speedmeter.csv");
  check_golden(cfg("ligo_like.cfg") + " --command regime --format csv --sweep energy_erg:1e4:1e8:5:log",
               "regime_energy_sweep.csv");
}

TEST_CASE("every command succeeds on the baseline config in every format") {
  for (const char* c : {"budget", "snr", "stability", "regime", "evolve"}) {
    for (const char* f : {"table", "csv", "json-lines"}) {
      const auto r = run(cfg("ligo_like.cfg") + " --command " + c + " --format " + f);
      CHECK_MESSAGE(r.status == 0, c, " ", f, ": ", r.out);
    }
    const auto csv = run(cfg("ligo_like.cfg") + " --command " + c + " --format csv");
    CHECK_NOTHROW(qnd::parse_csv(csv.out));
  }
}

TEST_CASE("evolve sweep over delta_phi") {
  const auto r = run(cfg("ligo_like.cfg") + " --command evolve --format csv --sweep delta_phi:1e-3:1e-1:3:log");
  REQUIRE(r.status == 0);
  const auto parsed = qnd::parse_csv(r.out);
  CHECK(parsed.columns.front() == "delta_phi_rad");
  CHECK(parsed.rows.size() == 3);
  CHECK(parsed.rows.back()[1] == "9.96671e-03");
}

TEST_CASE("custom meter table") {
  const auto r = run(cfg("custom_meter.cfg") + " --command budget");
  CHECK_MESSAGE(r.status == 0, r.out);
  CHECK(r.out.find("custom") != std::string::npos);
}

TEST_CASE("output file option") {
  const std::string path = std::string(TEST_TMP_DIR) + "/budget_out.csv";
  std::remove(path.c_str());
  const auto r = run(cfg("ligo_like.cfg") + " --command budget --format csv --output " + path);
  REQUIRE(r.status == 0);
  CHECK(r.out.empty());
  CHECK(slurp(path) == slurp(kGolden + "/budget_plain.csv"));
}

TEST_CASE("errors are one line with the documented exit status") {
  auto one_line = [](const std::string& s) {
    return s.find('\n') == s.size() - 1 && s.rfind("error: ", 0) == 0;
  };
  const auto missing = run("--config /nonexistent.cfg --command budget");
  CHECK(missing.status == 2);
  CHECK(one_line(missing.out));

  const auto bad_cmd = run(cfg("ligo_like.cfg") + " --command fly");
  CHECK(bad_cmd.status == 2);
  CHECK(one_line(bad_cmd.out));

  const auto unsupported = run(cfg("unsupported_regime.cfg") + " --command regime");
  CHECK(unsupported.status == 3);
  CHECK(one_line(unsupported.out));
  CHECK(unsupported.out.find("unsupported-regime") != std::string::npos);

  const auto no_sm = run(cfg("ligo_like.cfg") + " --command speedmeter");
  CHECK(no_sm.status == 2);
  CHECK(one_line(no_sm.out));

  const auto bad_sweep = run(cfg("ligo_like.cfg") + " --command budget --sweep energy_erg:1:2");
  CHECK(bad_sweep.status == 2);
  CHECK(one_line(bad_sweep.out));

  const auto no_args = run("");
  CHECK(no_args.status == 2);
}
