// qndtool: command-line front end for the qnd library.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qnd/commands.hpp"
#include "qnd/config.hpp"
#include "qnd/errors.hpp"
#include "qnd/report.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) qnd::fail(qnd::ErrorKind::Parse, "cannot open config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symphotonic states, QND readout limits and noise budgets"};
  std::string config_path;
  std::string command_name;
  std::string output_path;
  std::string format_name;
  std::string sweep_text;
  app.add_option("--config", config_path, "parameter file (key = value)")->required();
  app.add_option("--command", command_name,
                 "budget | snr | stability | regime | evolve | speedmeter")
      ->required();
  app.add_option("--output", output_path, "write to this file instead of standard output");
  app.add_option("--format", format_name, "table | csv | json-lines");
  app.add_option("--sweep", sweep_text, "key:start:stop:points:log|lin");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: parse: " << e.what() << '\n';
    return 2;
  }

  try {
    const auto command = qnd::parse_command(command_name);
    const auto entries = qnd::parse_entries(read_file(config_path));
    const auto base_dir = std::filesystem::path(config_path).parent_path();
    std::optional<qnd::Sweep> sweep;
    if (!sweep_text.empty()) sweep = qnd::parse_sweep(sweep_text);

    // Validates the file once up front so warnings and output settings are known.
    const auto cfg = qnd::build_config(entries);
    for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << '\n';
    auto output = cfg.output;
    if (!format_name.empty()) output.format = qnd::parse_output_format(format_name);
    if (!output_path.empty()) output.path = output_path;

    const auto report = qnd::run_invocation(entries, base_dir, command, sweep);
    const auto text = qnd::render(report, output.format);
    if (output.path) {
      std::filesystem::path path = *output.path;
      if (output_path.empty() && path.is_relative()) path = base_dir / path;
      std::ofstream out(path, std::ios::binary);
      if (!out) qnd::fail(qnd::ErrorKind::Validation, "cannot write " + path.string());
      out << text;
    } else {
      std::cout << text;
    }
    return 0;
  } catch (const qnd::Error& e) {
    std::cerr << "error: " << qnd::to_string(e.kind()) << ": " << e.what() << '\n';
    return qnd::exit_status(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return 3;
  }
}
