#include "fanno/transient.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "fanno/kernels.hpp"
#include "fanno/numfmt.hpp"

namespace fanno {

namespace {

struct Workspace {
  std::vector<double> src, dr, ds, r1, s1;

  explicit Workspace(std::size_t n) : src(n), dr(n), ds(n), r1(n), s1(n) {}
};

// Scalar rescan for the first offending point; only runs on failure.
[[noreturn]] void report_invalid(const GasParams& gas, const Grid1D& grid, const double* r,
                                 const double* s, std::size_t n, double t) {
  const double k = 0.5 * (gas.gamma() - 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double gap = s[i] - r[i];
    const double lambda1 = (r[i] + s[i]) - k * gap;
    const FailureSite site{t, grid.x(i)};
    if (std::isfinite(gap) && std::isfinite(lambda1) && gap > 0.0 && lambda1 <= 0.0) {
      std::ostringstream msg;
      msg << "flow became sonic or subsonic (u - c = " << format_double(lambda1)
          << ") at t=" << format_double(t) << ", x=" << format_double(site.x);
      throw Error(ErrorKind::SupersonicityLost, msg.str(), site);
    }
    if (!(gap > 0.0) || !std::isfinite(lambda1)) {
      std::ostringstream msg;
      msg << "sound speed lost positivity (s - r = " << format_double(gap)
          << ") at t=" << format_double(t) << ", x=" << format_double(site.x);
      throw Error(ErrorKind::NonPositiveSoundSpeed, msg.str(), site);
    }
  }
  throw Error(ErrorKind::SupersonicityLost, "invalid field", FailureSite{t, 0.0});
}

simd::CharBounds checked_bounds(const GasParams& gas, const Grid1D& grid, const double* r,
                                const double* s, std::size_t n, double t) {
  const double k = 0.5 * (gas.gamma() - 1.0);
  const simd::CharBounds b = simd::active_kernels().char_bounds(r, s, n, k);
  if (b.has_nan || !(b.min_gap > 0.0) || !(b.min_lambda1 > 0.0) || !std::isfinite(b.max_lambda2)) {
    report_invalid(gas, grid, r, s, n, t);
  }
  return b;
}

void require_grid(const Grid1D& grid, const Field& field) {
  if (field.r.size() != grid.size() || field.s.size() != grid.size()) {
    throw Error(ErrorKind::GridMismatch, "field size does not match the grid");
  }
}

// One Heun step on the full semi-discrete operator. Returns the bounds of
// the new level (already validated).
simd::CharBounds advance(const GasParams& gas, const Grid1D& grid, const Field& in,
                         const BoundarySignal& signal, std::optional<double> until, Field& out,
                         Workspace& ws) {
  const simd::Kernels& kern = simd::active_kernels();
  const std::size_t n = grid.size();
  const double k = 0.5 * (gas.gamma() - 1.0);
  const double half_beta = 0.5 * gas.beta();
  const double inv_dx = 1.0 / grid.dx();

  const simd::CharBounds b0 = checked_bounds(gas, grid, in.r.data(), in.s.data(), n, in.time);
  double dt = stable_time_step(grid.cfl(), grid.dx(), b0.max_lambda2);
  double t_new = in.time + dt;
  if (until && t_new >= *until) {
    dt = *until - in.time;
    t_new = *until;
  }
  if (!(dt > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "time step collapsed to zero");
  }
  const RiemannState inlet = signal.invariants(gas, t_new);

  kern.source_term(in.r.data(), in.s.data(), n, half_beta, gas.alpha(), ws.src.data());
  kern.transport_rhs(in.r.data(), in.s.data(), ws.src.data(), n, k, inv_dx, ws.dr.data(),
                     ws.ds.data());
  kern.euler_update(in.r.data(), ws.dr.data(), n, dt, ws.r1.data());
  kern.euler_update(in.s.data(), ws.ds.data(), n, dt, ws.s1.data());
  ws.r1[0] = inlet.r;
  ws.s1[0] = inlet.s;
  checked_bounds(gas, grid, ws.r1.data(), ws.s1.data(), n, t_new);

  kern.source_term(ws.r1.data(), ws.s1.data(), n, half_beta, gas.alpha(), ws.src.data());
  kern.transport_rhs(ws.r1.data(), ws.s1.data(), ws.src.data(), n, k, inv_dx, ws.dr.data(),
                     ws.ds.data());
  out.r.resize(n);
  out.s.resize(n);
  kern.heun_average(in.r.data(), ws.r1.data(), ws.dr.data(), n, dt, out.r.data());
  kern.heun_average(in.s.data(), ws.s1.data(), ws.ds.data(), n, dt, out.s.data());
  out.r[0] = inlet.r;
  out.s[0] = inlet.s;
  out.time = t_new;
  return checked_bounds(gas, grid, out.r.data(), out.s.data(), n, t_new);
}

double perturbation_from(const GasParams& gas, const Field& f, const SteadyProfile& bg) {
  const double k = 0.5 * (gas.gamma() - 1.0);
  const double inv_gm1 = 1.0 / (gas.gamma() - 1.0);
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double c = k * (f.s[i] - f.r[i]);
    const double rho = std::pow(c * c / gas.gamma(), inv_gm1);
    const double u = f.r[i] + f.s[i];
    m = std::max({m, std::abs(rho - bg.rho_tilde[i]), std::abs(u - bg.u_tilde[i])});
  }
  return m;
}

}  // namespace

Grid1D Grid1D::make(double length, int nx, double cfl) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw Error(ErrorKind::InvalidParameter, "duct length must be positive");
  }
  if (nx < kMinPoints) {
    throw Error(ErrorKind::InvalidParameter, "grid needs at least 8 points");
  }
  if (!(cfl > 0.0 && cfl <= 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "cfl must lie in (0, 1]");
  }
  return Grid1D(length, nx, cfl);
}

double Grid1D::x(std::size_t i) const {
  const auto last = static_cast<std::size_t>(nx_ - 1);
  return i == last ? length_ : length_ * static_cast<double>(i) / static_cast<double>(last);
}

Field field_from_profile(const GasParams& gas, const SteadyProfile& profile) {
  Field f;
  f.r.resize(profile.size());
  f.s.resize(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const RiemannState rs = to_riemann(gas, profile.state(i));
    f.r[i] = rs.r;
    f.s[i] = rs.s;
  }
  return f;
}

Field field_from_states(const GasParams& gas, const std::vector<FlowState>& states, double time) {
  Field f;
  f.time = time;
  for (const FlowState& v : states) {
    const RiemannState rs = to_riemann(gas, v);
    f.r.push_back(rs.r);
    f.s.push_back(rs.s);
  }
  return f;
}

double stable_time_step(double cfl, double dx, double max_lambda2) {
  return cfl * dx / max_lambda2;
}

Field step(const GasParams& gas, const Grid1D& grid, const Field& field,
           const BoundarySignal& signal, std::optional<double> until) {
  require_grid(grid, field);
  Workspace ws(grid.size());
  Field out;
  advance(gas, grid, field, signal, until, out, ws);
  return out;
}

RunRecord run(const GasParams& gas, const Grid1D& grid, const Field& init,
              const BoundarySignal& signal, const RunOptions& options) {
  require_grid(grid, init);
  if (options.background && options.background->size() != grid.size()) {
    throw Error(ErrorKind::GridMismatch, "background profile does not match the grid");
  }
  RunRecord rec;
  rec.length = grid.length();
  rec.nx = grid.nx();

  auto take_snapshot = [&](const Field& f) {
    rec.snapshots.push_back(f);
    if (options.observer) options.observer(f);
  };

  try {
    const auto b = checked_bounds(gas, grid, init.r.data(), init.s.data(), grid.size(), init.time);
    rec.min_lambda1 = b.min_lambda1;
    rec.max_lambda2 = b.max_lambda2;
  } catch (const Error& e) {
    rec.failure = RunFailure{e.kind(), e.site().value_or(FailureSite{init.time, 0.0}), e.what()};
    return rec;
  }
  take_snapshot(init);
  if (options.background) {
    rec.step_times.push_back(init.time);
    rec.step_perturbation.push_back(perturbation_from(gas, init, *options.background));
  }

  const double t_end = options.t_end;
  const double every = options.snapshot_every;
  Workspace ws(grid.size());
  Field cur = init;
  Field next;
  long long snap_index = 1;
  double next_snap = every > 0.0 ? init.time + every : INFINITY;

  while (cur.time < t_end) {
    const double target = std::min(next_snap, t_end);
    simd::CharBounds b;
    try {
      b = advance(gas, grid, cur, signal, target, next, ws);
    } catch (const Error& e) {
      rec.failure = RunFailure{e.kind(), e.site().value_or(FailureSite{cur.time, 0.0}), e.what()};
      break;
    }
    std::swap(cur, next);
    ++rec.steps;
    rec.min_lambda1 = std::min(rec.min_lambda1, b.min_lambda1);
    rec.max_lambda2 = std::max(rec.max_lambda2, b.max_lambda2);
    if (options.background) {
      rec.step_times.push_back(cur.time);
      rec.step_perturbation.push_back(perturbation_from(gas, cur, *options.background));
    }
    if (cur.time == target) {
      if (target == next_snap) {
        take_snapshot(cur);
        ++snap_index;
        next_snap = init.time + static_cast<double>(snap_index) * every;
      } else {
        take_snapshot(cur);  // t_end between cadence points
      }
    }
  }
  return rec;
}

RunRecord run(const GasParams& gas, const Grid1D& grid, const SteadyProfile& init,
              const BoundarySignal& signal, RunOptions options) {
  if (init.size() != grid.size()) {
    throw Error(ErrorKind::GridMismatch, "profile does not match the grid");
  }
  if (!options.background) options.background = &init;
  return run(gas, grid, field_from_profile(gas, init), signal, options);
}

void write_snapshots_csv(std::ostream& out, const GasParams& gas, const Grid1D& grid,
                         const RunRecord& record) {
  out << "t,x,rho,u,c,mach,r,s\n";
  for (const Field& f : record.snapshots) {
    const std::string t = format_double(f.time);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double c = sound_speed_of(gas, f.r[i], f.s[i]);
      const double u = velocity_of(f.r[i], f.s[i]);
      const double rho = density_from_sound_speed(gas, c);
      out << t << ',' << format_double(grid.x(i)) << ',' << format_double(rho) << ','
          << format_double(u) << ',' << format_double(c) << ',' << format_double(u / c) << ','
          << format_double(f.r[i]) << ',' << format_double(f.s[i]) << '\n';
    }
  }
}

void write_run_summary(std::ostream& out, const RunRecord& record) {
  double max_pert = 0.0;
  for (double p : record.step_perturbation) max_pert = std::max(max_pert, p);
  out << "status=" << (record.ok() ? "ok" : "failed") << '\n'
      << "nx=" << record.nx << '\n'
      << "length=" << format_double(record.length) << '\n'
      << "steps=" << record.steps << '\n'
      << "snapshots=" << record.snapshots.size() << '\n'
      << "t_reached=" << format_double(record.end_time()) << '\n'
      << "min_lambda1=" << format_double(record.min_lambda1) << '\n'
      << "max_lambda2=" << format_double(record.max_lambda2) << '\n'
      << "max_perturbation=" << format_double(max_pert) << '\n';
  if (record.failure) {
    out << "failure_kind=" << to_string(record.failure->kind) << '\n'
        << "failure_t=" << format_double(record.failure->site.t) << '\n'
        << "failure_x=" << format_double(record.failure->site.x) << '\n'
        << "failure_message=" << record.failure->message << '\n';
  }
}

}  // namespace fanno
