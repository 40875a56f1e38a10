#include "fanno/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "fanno/numfmt.hpp"

namespace fanno {

namespace {

void log_line(LogLevel level, LogLevel wanted, const std::string& text) {
  if (static_cast<int>(level) >= static_cast<int>(wanted)) std::cerr << "[fanno] " << text << '\n';
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::string limit_value(const DuctLimit& limit) {
  return limit.bounded() ? format_double(limit.length) : std::string("unbounded");
}

std::string_view limit_kind(const DuctLimit& limit) {
  switch (limit.kind) {
    case DuctLimit::Kind::Unbounded: return "unbounded";
    case DuctLimit::Kind::Choking: return "choking";
    case DuctLimit::Kind::Blowup: return "blowup";
    case DuctLimit::Kind::Vacuum: return "vacuum";
  }
  return "unknown";
}

void write_steady_summary(std::ostream& out, const ScenarioConfig& cfg, const SteadyOutcome& st) {
  out << "status=" << (st.exit == kExitOk ? "ok" : "failed") << '\n'
      << "exit=" << st.exit << '\n'
      << "regime=" << (st.regime ? std::string(to_string(*st.regime)) : std::string("none"))
      << '\n'
      << "s_c=" << format_double(st.s_c) << '\n'
      << "l_max=" << limit_value(st.limit) << '\n'
      << "l_max_kind=" << limit_kind(st.limit) << '\n'
      << "length=" << format_double(cfg.length) << '\n';
  if (!st.message.empty()) out << "message=" << st.message << '\n';
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DuctTooLong:
      return kExitChoked;
    case ErrorKind::SupersonicityLost:
    case ErrorKind::NonPositiveSoundSpeed:
    case ErrorKind::EpsilonTooLarge:
      return kExitSupersonicityLost;
    case ErrorKind::ParseError:
    case ErrorKind::ValidationError:
    case ErrorKind::InvalidParameter:
    case ErrorKind::SonicUpstream:
    case ErrorKind::ZeroBeta:
    case ErrorKind::NonPositiveDensity:
    case ErrorKind::NonPositiveSpeed:
      return kExitConfig;
    case ErrorKind::InsufficientSnapshots:
    case ErrorKind::GridMismatch:
      return kExitInternal;
  }
  return kExitInternal;
}

LogLevel log_level_from_env() {
  const char* env = std::getenv("FANNO_LOG");
  if (env == nullptr) return LogLevel::Info;
  const std::string v(env);
  if (v == "quiet") return LogLevel::Quiet;
  if (v == "debug") return LogLevel::Debug;
  return LogLevel::Info;
}

SteadyOutcome solve_steady(const ScenarioConfig& cfg) {
  SteadyOutcome st;
  try {
    const GasParams gas = cfg.gas();
    const UpstreamState up = cfg.upstream();
    st.s_c = critical_speed(up, gas);
    st.limit = max_duct_length(gas, up);
    if (gas.beta() != 0.0) st.regime = classify_regime(gas, up);
    st.profile = solve_profile(gas, up, cfg.length, cfg.nx);
  } catch (const Error& e) {
    st.exit = exit_code_for(e.kind());
    st.message = e.what();
  }
  return st;
}

double resolve_t_end(const ScenarioConfig& cfg, double flushing_time) {
  return cfg.t_end.value_or(kFlushingSafety * flushing_time + 3.0 * cfg.period);
}

SimulationOutcome simulate(const ScenarioConfig& cfg) {
  SimulationOutcome sim;
  sim.steady = solve_steady(cfg);
  if (sim.steady.exit != kExitOk) {
    sim.exit = sim.steady.exit;
    sim.message = sim.steady.message;
    return sim;
  }
  try {
    const GasParams gas = cfg.gas();
    const UpstreamState up = cfg.upstream();
    const SteadyProfile& profile = *sim.steady.profile;
    sim.flushing_time = flushing_time(gas, profile);
    sim.t_end = resolve_t_end(cfg, sim.flushing_time);
    const BoundarySignal signal = BoundarySignal::make(up, gas, cfg.period, cfg.epsilon, cfg.shape);
    const Grid1D grid = cfg.grid();

    RunOptions opts;
    opts.t_end = sim.t_end;
    opts.snapshot_every = cfg.snapshot_cadence();
    sim.record = run(gas, grid, profile, signal, opts);
    sim.norms = perturbation_norms(gas, *sim.record, profile);

    if (const auto& fail = sim.record->failure) {
      sim.exit = exit_code_for(fail->kind);
      sim.message = fail->message;
      sim.periodicity_note = "run failed";
      return sim;
    }
    const double t_check =
        cfg.t_check.value_or(kFlushingSafety * flushing_time(gas, *sim.record));
    try {
      sim.periodicity = periodicity_residual(*sim.record, cfg.period, t_check);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InsufficientSnapshots) throw;
      sim.periodicity_note = e.what();
    }
  } catch (const Error& e) {
    sim.exit = exit_code_for(e.kind());
    sim.message = e.what();
    if (e.site()) {
      std::ostringstream msg;
      msg << sim.message << " [t=" << format_double(e.site()->t)
          << ", x=" << format_double(e.site()->x) << "]";
      sim.message = msg.str();
    }
  }
  return sim;
}

int cmd_steady(const ScenarioConfig& cfg, const std::filesystem::path& out_dir, LogLevel log) {
  const SteadyOutcome st = solve_steady(cfg);
  std::filesystem::create_directories(out_dir);
  {
    auto out = open_output(out_dir / "steady.txt");
    write_steady_summary(out, cfg, st);
  }
  if (st.profile && cfg.wants("profile")) {
    auto out = open_output(out_dir / "profile.csv");
    write_profile_csv(out, *st.profile);
  }
  if (st.exit != kExitOk) {
    std::cerr << "fanno steady: " << st.message << '\n';
  } else {
    log_line(log, LogLevel::Info,
             "steady profile written, l_max=" + limit_value(st.limit) +
                 ", s_c=" + format_double(st.s_c));
  }
  return st.exit;
}

int cmd_simulate(const ScenarioConfig& cfg, const std::filesystem::path& out_dir, LogLevel log) {
  log_line(log, LogLevel::Info, "simulating nx=" + std::to_string(cfg.nx));
  const SimulationOutcome sim = simulate(cfg);
  std::filesystem::create_directories(out_dir);
  {
    auto out = open_output(out_dir / "steady.txt");
    write_steady_summary(out, cfg, sim.steady);
  }
  if (sim.steady.profile && cfg.wants("profile")) {
    auto out = open_output(out_dir / "profile.csv");
    write_profile_csv(out, *sim.steady.profile);
  }
  if (sim.record && cfg.wants("snapshots")) {
    auto out = open_output(out_dir / "snapshots.csv");
    write_snapshots_csv(out, cfg.gas(), cfg.grid(), *sim.record);
  }
  if (sim.periodicity && cfg.wants("periodicity")) {
    auto out = open_output(out_dir / "periodicity.csv");
    write_periodicity_csv(out, *sim.periodicity);
  }
  if (cfg.wants("norms")) {
    auto out = open_output(out_dir / "norms.txt");
    out << "exit=" << sim.exit << '\n'
        << "flushing_time=" << format_double(sim.flushing_time) << '\n'
        << "t_end=" << format_double(sim.t_end) << '\n';
    if (sim.norms) write_norms(out, *sim.norms);
    if (sim.periodicity) {
      out << "t_check=" << format_double(sim.periodicity->t_check) << '\n'
          << "residual_max=" << format_double(sim.periodicity->residual_max) << '\n'
          << "residual_l2=" << format_double(sim.periodicity->residual_l2) << '\n'
          << "boundary_residual=" << format_double(sim.periodicity->boundary_residual) << '\n'
          << "grid_resolution=" << sim.periodicity->grid_resolution << '\n';
    } else if (!sim.periodicity_note.empty()) {
      out << "periodicity=unavailable\n"
          << "periodicity_note=" << sim.periodicity_note << '\n';
    }
  }
  {
    auto out = open_output(out_dir / "run.txt");
    out << "exit=" << sim.exit << '\n';
    if (sim.record) write_run_summary(out, *sim.record);
    if (!sim.message.empty()) out << "message=" << sim.message << '\n';
  }
  if (sim.exit != kExitOk) {
    std::cerr << "fanno simulate: " << sim.message << '\n';
  } else if (sim.periodicity) {
    log_line(log, LogLevel::Info,
             "periodicity residual_max=" + format_double(sim.periodicity->residual_max));
  } else {
    log_line(log, LogLevel::Info, "periodicity not evaluated: " + sim.periodicity_note);
  }
  return sim.exit;
}

ScenarioConfig with_axis_value(const ScenarioConfig& base, std::string_view axis, double value) {
  ScenarioConfig cfg = base;
  if (axis == "alpha") cfg.alpha = value;
  else if (axis == "beta") cfg.beta = value;
  else if (axis == "gamma") cfg.gamma = value;
  else if (axis == "u_minus") cfg.u_minus = value;
  else if (axis == "c_minus") {
    cfg.c_minus = value;
    cfg.rho_minus.reset();
  } else if (axis == "epsilon") cfg.epsilon = value;
  else if (axis == "nx") {
    if (value != std::floor(value) || !(value >= 0.0) || value > 1e9) {
      throw Error(ErrorKind::ValidationError, "nx values must be whole numbers");
    }
    cfg.nx = static_cast<int>(value);
  } else {
    throw Error(ErrorKind::ValidationError, "unknown sweep axis '" + std::string(axis) + "'");
  }
  return cfg;
}

std::vector<SweepRow> run_sweep(const ScenarioConfig& cfg, std::string_view axis,
                                const std::vector<double>& values, int jobs) {
  (void)with_axis_value(cfg, axis, values.empty() ? 0.0 : values.front());  // axis check
  std::vector<SweepRow> rows(values.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < values.size(); i = next++) {
      SweepRow& row = rows[i];
      row.value = values[i];
      try {
        const ScenarioConfig c = with_axis_value(cfg, axis, values[i]);
        c.validate();
        const SimulationOutcome sim = simulate(c);
        if (sim.steady.regime) row.regime = std::string(to_string(*sim.steady.regime));
        if (sim.steady.s_c > 0.0) {
          row.s_c = sim.steady.s_c;
          row.limit = sim.steady.limit;
        }
        if (sim.periodicity) row.residual_max = sim.periodicity->residual_max;
        row.exit = sim.exit;
      } catch (const Error& e) {
        row.exit = exit_code_for(e.kind());
      } catch (const std::exception&) {
        row.exit = kExitInternal;
      }
    }
  };
  const int n_threads = std::max(1, std::min<int>(jobs, static_cast<int>(values.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "value,regime,s_c,l_max,residual_max,exit\n";
  for (const auto& r : rows) {
    out << format_double(r.value) << ',' << r.regime << ','
        << (r.s_c ? format_double(*r.s_c) : "") << ','
        << (r.limit ? limit_value(*r.limit) : "") << ','
        << (r.residual_max ? format_double(*r.residual_max) : "") << ',' << r.exit << '\n';
  }
}

int cmd_sweep(const ScenarioConfig& cfg, std::string_view axis, const std::vector<double>& values,
              int jobs, const std::filesystem::path& out_dir, LogLevel log) {
  const auto rows = run_sweep(cfg, axis, values, jobs);
  std::filesystem::create_directories(out_dir);
  auto out = open_output(out_dir / "sweep.csv");
  write_sweep_csv(out, rows);
  log_line(log, LogLevel::Info,
           "sweep over " + std::string(axis) + " wrote " + std::to_string(rows.size()) + " rows");
  return kExitOk;
}

}  // namespace fanno
