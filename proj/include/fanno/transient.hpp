#pragma once

// Explicit characteristic solver for the Riemann-invariant form
//   r_t + (u - c) r_x = beta u^(alpha+1) / 2,
//   s_t + (u + c) s_x = beta u^(alpha+1) / 2,
// on 0 <= x <= L with fully prescribed supersonic inflow at x = 0 and pure
// outflow at x = L. Both characteristic speeds are positive, so both
// invariants use left-biased differences; time marching is Heun (SSP-RK2).

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fanno/boundary.hpp"
#include "fanno/error.hpp"
#include "fanno/gas.hpp"
#include "fanno/steady.hpp"

namespace fanno {

class Grid1D {
 public:
  static constexpr int kMinPoints = 8;
  static constexpr int kDefaultPoints = 401;
  static constexpr double kDefaultCfl = 0.9;

  /// nx grid points (x_0 = 0, x_{nx-1} = length); cfl in (0, 1].
  static Grid1D make(double length, int nx, double cfl = kDefaultCfl);

  double length() const noexcept { return length_; }
  int nx() const noexcept { return nx_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(nx_); }
  double dx() const noexcept { return dx_; }
  double cfl() const noexcept { return cfl_; }
  double x(std::size_t i) const;

 private:
  Grid1D(double length, int nx, double cfl)
      : length_(length), nx_(nx), dx_(length / (nx - 1)), cfl_(cfl) {}

  double length_;
  int nx_;
  double dx_;
  double cfl_;
};

/// Riemann invariants at every grid point at one time level.
struct Field {
  double time = 0.0;
  std::vector<double> r;
  std::vector<double> s;

  std::size_t size() const noexcept { return r.size(); }
  FlowState state(const GasParams& gas, std::size_t i) const {
    return from_riemann(gas, {r[i], s[i]});
  }
};

Field field_from_profile(const GasParams& gas, const SteadyProfile& profile);
Field field_from_states(const GasParams& gas, const std::vector<FlowState>& states,
                        double time = 0.0);

/// cfl * dx / max_lambda2.
double stable_time_step(double cfl, double dx, double max_lambda2);

/// Advances one time level. When `until` is given and the CFL step would
/// pass it, the step is shortened to land on `until` exactly.
///
/// Throws SupersonicityLost when u - c <= 0 somewhere, NonPositiveSoundSpeed
/// when s <= r somewhere; the error carries the first failing (t, x).
Field step(const GasParams& gas, const Grid1D& grid, const Field& field,
           const BoundarySignal& signal, std::optional<double> until = std::nullopt);

struct RunOptions {
  double t_end = 0.0;
  /// Snapshot cadence; snapshots fall on exact multiples. <= 0 keeps only
  /// the initial and final levels.
  double snapshot_every = 0.0;
  /// Background for the per-step perturbation norm; run() from a profile
  /// uses that profile when this is null.
  const SteadyProfile* background = nullptr;
  std::function<void(const Field&)> observer;
};

struct RunFailure {
  ErrorKind kind = ErrorKind::SupersonicityLost;
  FailureSite site;
  std::string message;
};

struct RunRecord {
  double length = 0.0;
  int nx = 0;
  std::vector<Field> snapshots;
  std::vector<double> step_times;
  std::vector<double> step_perturbation;  // max_x max(|rho - rho~|, |u - u~|)
  std::size_t steps = 0;
  double min_lambda1 = 0.0;  // over every accepted time level
  double max_lambda2 = 0.0;
  std::optional<RunFailure> failure;

  bool ok() const noexcept { return !failure.has_value(); }
  double end_time() const { return snapshots.empty() ? 0.0 : snapshots.back().time; }
};

RunRecord run(const GasParams& gas, const Grid1D& grid, const Field& init,
              const BoundarySignal& signal, const RunOptions& options);
RunRecord run(const GasParams& gas, const Grid1D& grid, const SteadyProfile& init,
              const BoundarySignal& signal, RunOptions options);

/// CSV with header t,x,rho,u,c,mach,r,s; one row per snapshot and point.
void write_snapshots_csv(std::ostream& out, const GasParams& gas, const Grid1D& grid,
                         const RunRecord& record);

/// key=value summary of a run.
void write_run_summary(std::ostream& out, const RunRecord& record);

}  // namespace fanno
