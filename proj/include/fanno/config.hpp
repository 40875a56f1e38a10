#pragma once

// Scenario files: flat `section.key = value` lines, `#` starts a comment.
//
//   gas.gamma = 2            gas.alpha = 0           gas.beta = -1
//   upstream.c_minus = 1     (or upstream.rho_minus) upstream.u_minus = 2
//   duct.length = 0.35
//   grid.nx = 401            grid.cfl = 0.9
//   boundary.period = 1      boundary.epsilon = 1e-3 boundary.shape = bump
//   sim.t_end = 10           (or auto: 1.05 T1 + 3 P)
//   sim.snapshot_every = ... (default period / 64)
//   sim.t_check = ...        (default 1.05 T1)
//   outputs.directory = out  outputs.which = profile,snapshots,periodicity,norms

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "fanno/boundary.hpp"
#include "fanno/gas.hpp"
#include "fanno/steady.hpp"
#include "fanno/transient.hpp"

namespace fanno {

struct ScenarioConfig {
  double gamma = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  std::optional<double> c_minus;
  std::optional<double> rho_minus;
  double u_minus = 0.0;
  double length = 0.0;
  int nx = Grid1D::kDefaultPoints;
  double cfl = Grid1D::kDefaultCfl;
  double period = 0.0;
  double epsilon = 0.0;
  SignalShape shape = SignalShape::Bump;
  std::optional<double> t_end;  // empty means auto
  std::optional<double> snapshot_every;
  std::optional<double> t_check;
  std::string out_dir = ".";
  std::set<std::string> outputs{"profile", "snapshots", "periodicity", "norms"};

  GasParams gas() const;
  UpstreamState upstream() const;
  Grid1D grid() const;
  double snapshot_cadence() const { return snapshot_every.value_or(period / 64.0); }
  bool wants(std::string_view output) const { return outputs.count(std::string(output)) != 0; }

  /// Throws ValidationError describing the first violated constraint.
  void validate() const;
};

/// Parses and validates. Throws ParseError (with line and field) or
/// ValidationError.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Assigns one dotted key from its textual value (no validation).
/// Throws ParseError for unknown keys or malformed values.
void assign_config_key(ScenarioConfig& cfg, std::string_view key, std::string_view value,
                       int line = 0);

/// Canonical key=value rendering; parse_config(render_config(c)) == c.
std::string render_config(const ScenarioConfig& cfg);

double parse_number(std::string_view text, std::string_view field, int line = 0);

}  // namespace fanno
