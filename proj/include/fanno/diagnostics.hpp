#pragma once

// Post-processing of runs: flushing time, time-periodicity residuals,
// perturbation norms around the steady background and wave components.

#include <iosfwd>
#include <span>
#include <vector>

#include "fanno/gas.hpp"
#include "fanno/steady.hpp"
#include "fanno/transient.hpp"

namespace fanno {

/// Relative inflation applied to the flushing time before periodicity checks.
inline constexpr double kFlushingSafety = 1.05;

/// L / min lambda1 over every time level the run accepted.
double flushing_time(const GasParams& gas, const RunRecord& record);
/// L / min lambda1 over the profile grid.
double flushing_time(const GasParams& gas, const SteadyProfile& profile);

struct PeriodicitySample {
  double t = 0.0;
  double residual_max = 0.0;
  double residual_l2 = 0.0;
};

struct PeriodicityReport {
  double t_check = 0.0;
  double period = 0.0;
  double residual_max = 0.0;  // max over the window and x of |W(t+P) - W(t)|
  double residual_l2 = 0.0;   // max over the window of the trapezoidal L2 norm in x
  double boundary_residual = 0.0;  // same, restricted to x = 0
  int grid_resolution = 0;
  std::vector<PeriodicitySample> samples;
};

/// Compares snapshots at t and t + P for every snapshot t in
/// [t_check, t_check + P]. Throws InsufficientSnapshots when the record
/// does not reach t_check + 2P or has no matching pairs.
PeriodicityReport periodicity_residual(const RunRecord& record, double period, double t_check);

/// CSV t,residual_max,residual_l2.
void write_periodicity_csv(std::ostream& out, const PeriodicityReport& report);

struct PerturbationNorms {
  double value = 0.0;       // sup over snapshots of max_x max(|rho - rho~|, |u - u~|)
  double derivative = 0.0;  // same for the discrete x-derivatives
  double c1() const noexcept { return value + derivative; }
};

/// Sup norms of V - V~ over all snapshots. Throws GridMismatch.
PerturbationNorms perturbation_norms(const GasParams& gas, const RunRecord& record,
                                     const SteadyProfile& profile);

/// Sup norms of the snapshot-by-snapshot difference to a baseline run on the
/// same grid and snapshot times (e.g. the unperturbed run), which removes the
/// scheme's own steady drift. Throws GridMismatch.
PerturbationNorms perturbation_norms(const GasParams& gas, const RunRecord& record,
                                     const RunRecord& baseline);

/// Steady profile sampled as a one-snapshot record.
RunRecord profile_as_record(const GasParams& gas, const SteadyProfile& profile);

/// max over snapshots and x of |W - W~| in invariant space.
double steady_drift(const GasParams& gas, const RunRecord& record, const SteadyProfile& profile);

struct WaveComponents {
  std::vector<Vec2> m;  // l_i(V) (V - V~)
  std::vector<Vec2> n;  // l_i(V) d/dx (V - V~)
};

WaveComponents wave_components(const GasParams& gas, const Field& field,
                               const SteadyProfile& profile);

/// Largest |sum_k m_k r_k(V) - (V - V~)| relative to max |V - V~|.
double reconstruction_error(const GasParams& gas, const Field& field,
                            const SteadyProfile& profile, const WaveComponents& waves);

/// Central differences inside, second-order one-sided at both ends.
std::vector<double> derivative(std::span<const double> f, double dx);

/// Measured order log(e_coarse / e_fine) / log(ratio).
double observed_order(double e_coarse, double e_fine, double ratio = 2.0);

void write_norms(std::ostream& out, const PerturbationNorms& norms);

}  // namespace fanno
