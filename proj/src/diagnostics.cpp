#include "fanno/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "fanno/error.hpp"
#include "fanno/numfmt.hpp"

namespace fanno {

namespace {

constexpr double kTimeMatchTol = 1e-9;

double flush(double length, double min_lambda1) {
  if (!(min_lambda1 > 0.0)) {
    std::ostringstream msg;
    msg << "flushing time needs lambda1 > 0, observed " << format_double(min_lambda1);
    throw Error(ErrorKind::SupersonicityLost, msg.str());
  }
  return length / min_lambda1;
}

struct Primitive {
  std::vector<double> rho, u;
};

Primitive primitive_of(const GasParams& gas, const Field& f) {
  Primitive p;
  p.rho.resize(f.size());
  p.u.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const FlowState v = f.state(gas, i);
    p.rho[i] = v.rho;
    p.u[i] = v.u;
  }
  return p;
}

PerturbationNorms norms_of(const std::vector<double>& drho, const std::vector<double>& du,
                           double dx) {
  PerturbationNorms out;
  const auto ddrho = derivative(drho, dx);
  const auto ddu = derivative(du, dx);
  for (std::size_t i = 0; i < drho.size(); ++i) {
    out.value = std::max({out.value, std::abs(drho[i]), std::abs(du[i])});
    out.derivative = std::max({out.derivative, std::abs(ddrho[i]), std::abs(ddu[i])});
  }
  return out;
}

void merge(PerturbationNorms& into, const PerturbationNorms& n) {
  into.value = std::max(into.value, n.value);
  into.derivative = std::max(into.derivative, n.derivative);
}

// The profile as the solver sees it, after the trip through invariant space,
// so that comparing a field with its own background gives exactly zero.
Primitive background_of(const GasParams& gas, const SteadyProfile& profile) {
  return primitive_of(gas, field_from_profile(gas, profile));
}

double grid_dx(const RunRecord& record) { return record.length / (record.nx - 1); }

}  // namespace

double flushing_time(const GasParams& gas, const RunRecord& record) {
  (void)gas;
  return flush(record.length, record.min_lambda1);
}

double flushing_time(const GasParams& gas, const SteadyProfile& profile) {
  double m = INFINITY;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    m = std::min(m, eigenvalues(gas, profile.state(i)).lambda1);
  }
  return flush(profile.length, m);
}

PeriodicityReport periodicity_residual(const RunRecord& record, double period, double t_check) {
  if (!(period > 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "period must be positive");
  }
  const double tol = kTimeMatchTol * std::max(1.0, period);
  if (record.snapshots.empty() || record.end_time() < t_check + 2.0 * period - tol) {
    std::ostringstream msg;
    msg << "record ends at t=" << format_double(record.end_time()) << ", periodicity needs t>="
        << format_double(t_check + 2.0 * period);
    throw Error(ErrorKind::InsufficientSnapshots, msg.str());
  }
  PeriodicityReport rep;
  rep.t_check = t_check;
  rep.period = period;
  rep.grid_resolution = record.nx;
  const double dx = grid_dx(record);
  const auto& snaps = record.snapshots;

  std::size_t j = 0;
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    const double t = snaps[i].time;
    if (t < t_check - tol || t > t_check + period + tol) continue;
    const double want = t + period;
    while (j < snaps.size() && snaps[j].time < want - tol) ++j;
    if (j == snaps.size() || std::abs(snaps[j].time - want) > tol) continue;

    const Field& a = snaps[i];
    const Field& b = snaps[j];
    PeriodicitySample smp;
    smp.t = t;
    double l2 = 0.0;
    const std::size_t n = a.size();
    for (std::size_t k = 0; k < n; ++k) {
      const double dr = b.r[k] - a.r[k];
      const double ds = b.s[k] - a.s[k];
      smp.residual_max = std::max({smp.residual_max, std::abs(dr), std::abs(ds)});
      const double w = (k == 0 || k + 1 == n) ? 0.5 : 1.0;
      l2 += w * (dr * dr + ds * ds);
    }
    smp.residual_l2 = std::sqrt(l2 * dx);
    rep.boundary_residual =
        std::max({rep.boundary_residual, std::abs(b.r[0] - a.r[0]), std::abs(b.s[0] - a.s[0])});
    rep.residual_max = std::max(rep.residual_max, smp.residual_max);
    rep.residual_l2 = std::max(rep.residual_l2, smp.residual_l2);
    rep.samples.push_back(smp);
  }
  if (rep.samples.size() < 2) {
    throw Error(ErrorKind::InsufficientSnapshots,
                "no snapshot pairs (t, t + P) inside the periodicity window");
  }
  return rep;
}

void write_periodicity_csv(std::ostream& out, const PeriodicityReport& report) {
  out << "t,residual_max,residual_l2\n";
  for (const auto& s : report.samples) {
    out << format_double(s.t) << ',' << format_double(s.residual_max) << ','
        << format_double(s.residual_l2) << '\n';
  }
}

PerturbationNorms perturbation_norms(const GasParams& gas, const RunRecord& record,
                                     const SteadyProfile& profile) {
  if (static_cast<std::size_t>(record.nx) != profile.size()) {
    throw Error(ErrorKind::GridMismatch, "record and profile grids differ");
  }
  PerturbationNorms out;
  const double dx = grid_dx(record);
  const Primitive bg = background_of(gas, profile);
  std::vector<double> drho(profile.size()), du(profile.size());
  for (const Field& f : record.snapshots) {
    if (f.size() != profile.size()) {
      throw Error(ErrorKind::GridMismatch, "snapshot and profile grids differ");
    }
    const Primitive p = primitive_of(gas, f);
    for (std::size_t i = 0; i < f.size(); ++i) {
      drho[i] = p.rho[i] - bg.rho[i];
      du[i] = p.u[i] - bg.u[i];
    }
    merge(out, norms_of(drho, du, dx));
  }
  return out;
}

PerturbationNorms perturbation_norms(const GasParams& gas, const RunRecord& record,
                                     const RunRecord& baseline) {
  if (record.nx != baseline.nx || record.snapshots.size() > baseline.snapshots.size()) {
    throw Error(ErrorKind::GridMismatch, "record and baseline do not align");
  }
  PerturbationNorms out;
  const double dx = grid_dx(record);
  const auto n = static_cast<std::size_t>(record.nx);
  std::vector<double> drho(n), du(n);
  for (std::size_t k = 0; k < record.snapshots.size(); ++k) {
    const Field& f = record.snapshots[k];
    const Field& g = baseline.snapshots[k];
    if (std::abs(f.time - g.time) > kTimeMatchTol * std::max(1.0, std::abs(f.time))) {
      throw Error(ErrorKind::GridMismatch, "snapshot times of record and baseline differ");
    }
    const Primitive p = primitive_of(gas, f);
    const Primitive q = primitive_of(gas, g);
    for (std::size_t i = 0; i < n; ++i) {
      drho[i] = p.rho[i] - q.rho[i];
      du[i] = p.u[i] - q.u[i];
    }
    merge(out, norms_of(drho, du, dx));
  }
  return out;
}

RunRecord profile_as_record(const GasParams& gas, const SteadyProfile& profile) {
  RunRecord rec;
  rec.length = profile.length;
  rec.nx = static_cast<int>(profile.size());
  rec.snapshots.push_back(field_from_profile(gas, profile));
  double m1 = INFINITY, m2 = -INFINITY;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const Eigenvalues ev = eigenvalues(gas, profile.state(i));
    m1 = std::min(m1, ev.lambda1);
    m2 = std::max(m2, ev.lambda2);
  }
  rec.min_lambda1 = m1;
  rec.max_lambda2 = m2;
  return rec;
}

double steady_drift(const GasParams& gas, const RunRecord& record, const SteadyProfile& profile) {
  if (static_cast<std::size_t>(record.nx) != profile.size()) {
    throw Error(ErrorKind::GridMismatch, "record and profile grids differ");
  }
  const Field bg = field_from_profile(gas, profile);
  double m = 0.0;
  for (const Field& f : record.snapshots) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      m = std::max({m, std::abs(f.r[i] - bg.r[i]), std::abs(f.s[i] - bg.s[i])});
    }
  }
  return m;
}

WaveComponents wave_components(const GasParams& gas, const Field& field,
                               const SteadyProfile& profile) {
  if (field.size() != profile.size()) {
    throw Error(ErrorKind::GridMismatch, "field and profile grids differ");
  }
  const std::size_t n = field.size();
  const Primitive p = primitive_of(gas, field);
  const Primitive bg = background_of(gas, profile);
  std::vector<double> drho(n), du(n);
  for (std::size_t i = 0; i < n; ++i) {
    drho[i] = p.rho[i] - bg.rho[i];
    du[i] = p.u[i] - bg.u[i];
  }
  const double dx = profile.length / static_cast<double>(n - 1);
  const auto ddrho = derivative(drho, dx);
  const auto ddu = derivative(du, dx);

  WaveComponents w;
  w.m.resize(n);
  w.n.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Eigenbasis e = eigenvectors(gas, {p.rho[i], p.u[i]});
    const Vec2 v{drho[i], du[i]};
    const Vec2 vx{ddrho[i], ddu[i]};
    w.m[i] = {dot(e.l1, v), dot(e.l2, v)};
    w.n[i] = {dot(e.l1, vx), dot(e.l2, vx)};
  }
  return w;
}

double reconstruction_error(const GasParams& gas, const Field& field,
                            const SteadyProfile& profile, const WaveComponents& waves) {
  const Primitive bg = background_of(gas, profile);
  double err = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    const FlowState v = field.state(gas, i);
    const Eigenbasis e = eigenvectors(gas, v);
    const Vec2 bar{v.rho - bg.rho[i], v.u - bg.u[i]};
    const auto& m = waves.m[i];
    for (int k = 0; k < 2; ++k) {
      const double rebuilt = m[0] * e.r1[k] + m[1] * e.r2[k];
      err = std::max(err, std::abs(rebuilt - bar[k]));
      scale = std::max(scale, std::abs(bar[k]));
    }
  }
  return scale > 0.0 ? err / scale : err;
}

std::vector<double> derivative(std::span<const double> f, double dx) {
  const std::size_t n = f.size();
  std::vector<double> d(n, 0.0);
  if (n < 3) {
    if (n == 2) d[0] = d[1] = (f[1] - f[0]) / dx;
    return d;
  }
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dx);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * dx);
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dx);
  return d;
}

double observed_order(double e_coarse, double e_fine, double ratio) {
  return std::log(e_coarse / e_fine) / std::log(ratio);
}

void write_norms(std::ostream& out, const PerturbationNorms& norms) {
  out << "sup_value=" << format_double(norms.value) << '\n'
      << "sup_derivative=" << format_double(norms.derivative) << '\n'
      << "sup_c1=" << format_double(norms.c1()) << '\n';
}

}  // namespace fanno
