// fanno: steady Fanno profiles and periodic-inflow simulations.
//
//   fanno steady       --config scenario.cfg [--out dir]
//   fanno simulate     --config scenario.cfg [--out dir]
//   fanno sweep        --config scenario.cfg --axis beta --values -2,-1,-0.5 [--jobs n]
//   fanno check-config --config scenario.cfg
//
// Exit codes: 0 ok, 1 internal, 2 choked / invalid length,
// 3 supersonicity lost, 4 config error.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "fanno/config.hpp"
#include "fanno/error.hpp"
#include "fanno/scenario.hpp"

namespace {

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                         : comma - pos);
    out.push_back(fanno::parse_number(item, "--values"));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady Fanno flows and time-periodic supersonic inflow"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string axis;
  std::string values_text;
  int jobs = 1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Scenario file (dotted key = value)")->required();
  };
  auto* steady = app.add_subcommand("steady", "Solve the steady profile and maximal duct length");
  add_common(steady);
  steady->add_option("--out", out_dir, "Output directory (overrides outputs.directory)");

  auto* simulate = app.add_subcommand("simulate", "Run the periodic-inflow simulation");
  add_common(simulate);
  simulate->add_option("--out", out_dir, "Output directory (overrides outputs.directory)");

  auto* sweep = app.add_subcommand("sweep", "Repeat the scenario over one parameter");
  add_common(sweep);
  sweep->add_option("--out", out_dir, "Output directory (overrides outputs.directory)");
  sweep->add_option("--axis", axis, "alpha | beta | gamma | u_minus | c_minus | epsilon | nx")
      ->required();
  sweep->add_option("--values", values_text, "Comma-separated values")->required();
  sweep->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* check = app.add_subcommand("check-config", "Parse and validate a scenario file");
  add_common(check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return fanno::kExitConfig;
  }

  const fanno::LogLevel log = fanno::log_level_from_env();
  try {
    const fanno::ScenarioConfig cfg = fanno::load_config(config_path);
    const std::string dir = out_dir.empty() ? cfg.out_dir : out_dir;
    if (*check) {
      std::cout << fanno::render_config(cfg);
      return fanno::kExitOk;
    }
    if (*steady) return fanno::cmd_steady(cfg, dir, log);
    if (*simulate) return fanno::cmd_simulate(cfg, dir, log);
    if (*sweep) return fanno::cmd_sweep(cfg, axis, parse_values(values_text), jobs, dir, log);
  } catch (const fanno::Error& e) {
    std::cerr << "fanno: " << fanno::to_string(e.kind()) << ": " << e.what() << '\n';
    return fanno::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "fanno: internal error: " << e.what() << '\n';
    return fanno::kExitInternal;
  }
  return fanno::kExitInternal;
}
