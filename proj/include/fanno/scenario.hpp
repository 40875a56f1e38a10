#pragma once

// Orchestration behind the command-line subcommands: steady solve,
// transient simulation with diagnostics, and parameter sweeps.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fanno/config.hpp"
#include "fanno/diagnostics.hpp"
#include "fanno/error.hpp"
#include "fanno/steady.hpp"
#include "fanno/transient.hpp"

namespace fanno {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitChoked = 2,
  kExitSupersonicityLost = 3,
  kExitConfig = 4,
};

int exit_code_for(ErrorKind kind);

enum class LogLevel { Quiet, Info, Debug };

/// Reads FANNO_LOG (quiet | info | debug); defaults to info.
LogLevel log_level_from_env();

struct SteadyOutcome {
  int exit = kExitOk;
  std::string message;
  double s_c = 0.0;
  DuctLimit limit;
  std::optional<Regime> regime;
  std::optional<SteadyProfile> profile;
};

/// Never throws for domain failures; they land in `exit` and `message`.
SteadyOutcome solve_steady(const ScenarioConfig& cfg);

struct SimulationOutcome {
  int exit = kExitOk;
  std::string message;
  SteadyOutcome steady;
  std::optional<RunRecord> record;
  double flushing_time = 0.0;  // from the background profile
  double t_end = 0.0;
  std::optional<PeriodicityReport> periodicity;
  std::string periodicity_note;  // why periodicity is missing, if it is
  std::optional<PerturbationNorms> norms;
};

/// Resolved end time: the configured value or 1.05 T1 + 3 P.
double resolve_t_end(const ScenarioConfig& cfg, double flushing_time);

SimulationOutcome simulate(const ScenarioConfig& cfg);

int cmd_steady(const ScenarioConfig& cfg, const std::filesystem::path& out_dir,
               LogLevel log = LogLevel::Quiet);
int cmd_simulate(const ScenarioConfig& cfg, const std::filesystem::path& out_dir,
                 LogLevel log = LogLevel::Quiet);

inline constexpr std::string_view kSweepAxes[] = {"alpha",   "beta",    "gamma", "u_minus",
                                                  "c_minus", "epsilon", "nx"};

struct SweepRow {
  double value = 0.0;
  std::string regime;  // empty when undefined
  std::optional<double> s_c;
  std::optional<DuctLimit> limit;
  std::optional<double> residual_max;
  int exit = kExitOk;
};

/// Throws ValidationError for an unknown axis.
ScenarioConfig with_axis_value(const ScenarioConfig& base, std::string_view axis, double value);

/// Rows come back in the order of `values` whatever the thread count.
std::vector<SweepRow> run_sweep(const ScenarioConfig& cfg, std::string_view axis,
                                const std::vector<double>& values, int jobs);

/// CSV value,regime,s_c,l_max,residual_max,exit.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

int cmd_sweep(const ScenarioConfig& cfg, std::string_view axis, const std::vector<double>& values,
              int jobs, const std::filesystem::path& out_dir, LogLevel log = LogLevel::Quiet);

}  // namespace fanno
