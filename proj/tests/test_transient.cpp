#include <cmath>
#include <sstream>

#include "doctest.h"
#include "fanno/transient.hpp"
#include "support.hpp"

using namespace fanno;
using fanno::test::rel;

namespace {

const GasParams kGas = GasParams::make(2.0, 0.0, -1.0);
const UpstreamState kUp{1.0, 2.0};

double max_change(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max({m, std::abs(a.r[i] - b.r[i]), std::abs(a.s[i] - b.s[i])});
  }
  return m;
}

bool all_finite(const RunRecord& rec) {
  for (const auto& f : rec.snapshots) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (!std::isfinite(f.r[i]) || !std::isfinite(f.s[i])) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("grid") {
  const auto g = Grid1D::make(0.35, 401);
  CHECK(rel(g.dx() * (g.nx() - 1), 0.35) <= 1e-14);
  CHECK(g.x(0) == 0.0);
  CHECK(g.x(400) == 0.35);
  CHECK(g.cfl() == Grid1D::kDefaultCfl);
  CHECK(test::error_kind([] { Grid1D::make(0.0, 401); }) == ErrorKind::InvalidParameter);
  CHECK(test::error_kind([] { Grid1D::make(1.0, 7); }) == ErrorKind::InvalidParameter);
  CHECK(test::error_kind([] { Grid1D::make(1.0, 41, 0.0); }) == ErrorKind::InvalidParameter);
  CHECK(test::error_kind([] { Grid1D::make(1.0, 41, 1.01); }) == ErrorKind::InvalidParameter);
  CHECK(Grid1D::make(1.0, 41, 1.0).cfl() == 1.0);

  const auto p = solve_profile(kGas, kUp, 0.35, 401);
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(g.x(i) == p.xs[i]);
}

TEST_CASE("time step") {
  CHECK(stable_time_step(0.9, 0.01, 5.0) == doctest::Approx(0.0018).epsilon(1e-15));
}

TEST_CASE("constant state without friction is a fixed point") {
  const auto gas = GasParams::make(1.4, 0.5, 0.0);
  const UpstreamState up{1.0, 3.0};
  const auto g = Grid1D::make(2.0, 64);
  const auto p = solve_profile(gas, up, 2.0, 64);
  const auto sig = BoundarySignal::make(up, gas, 1.0, 0.0, SignalShape::Bump);
  const Field f0 = field_from_profile(gas, p);
  const Field f1 = step(gas, g, f0, sig);
  CHECK(f1.time > 0.0);
  CHECK(max_change(f0, f1) == 0.0);

  RunOptions opt;
  opt.t_end = 1.0;
  opt.snapshot_every = 0.25;
  const auto rec = run(gas, g, p, sig, opt);
  REQUIRE(rec.ok());
  CHECK(max_change(f0, rec.snapshots.back()) == 0.0);
}

TEST_CASE("one step from the steady profile changes it by scheme truncation only") {
  const auto sig = BoundarySignal::make(kUp, kGas, 1.0, 0.0, SignalShape::Bump);
  double prev = 0.0;
  for (int nx : {101, 201, 401}) {
    const auto p = solve_profile(kGas, kUp, 0.35, nx);
    const auto g = Grid1D::make(0.35, nx);
    const Field f0 = field_from_profile(kGas, p);
    const double change = max_change(f0, step(kGas, g, f0, sig));
    CHECK(change <= 10.0 * g.dx());
    if (prev > 0.0) CHECK(prev / change > 1.6);
    prev = change;
  }
}

TEST_CASE("step lands on the requested time") {
  const auto p = solve_profile(kGas, kUp, 0.35, 101);
  const auto g = Grid1D::make(0.35, 101);
  const auto sig = BoundarySignal::make(kUp, kGas, 1.0, 1e-3, SignalShape::Bump);
  const Field f0 = field_from_profile(kGas, p);
  const Field f1 = step(kGas, g, f0, sig, 1e-5);
  CHECK(f1.time == 1e-5);
  const auto inlet = sig.invariants(kGas, 1e-5);
  CHECK(f1.r[0] == inlet.r);
  CHECK(f1.s[0] == inlet.s);

  Field wrong = f0;
  wrong.r.pop_back();
  wrong.s.pop_back();
  CHECK(test::error_kind([&] { step(kGas, g, wrong, sig); }) == ErrorKind::GridMismatch);
}

TEST_CASE("run bookkeeping") {
  const auto p = solve_profile(kGas, kUp, 0.35, 101);
  const auto g = Grid1D::make(0.35, 101);
  const auto sig = BoundarySignal::make(kUp, kGas, 1.0, 1e-3, SignalShape::Bump);

  SUBCASE("t_end = 0 keeps the initial level only") {
    RunOptions opt;
    const auto rec = run(kGas, g, p, sig, opt);
    CHECK(rec.ok());
    CHECK(rec.snapshots.size() == 1);
    CHECK(rec.steps == 0);
    CHECK(rec.end_time() == 0.0);
  }

  SUBCASE("snapshots fall on exact multiples of the cadence") {
    RunOptions opt;
    opt.t_end = 1.3;
    opt.snapshot_every = 0.125;
    int observed = 0;
    opt.observer = [&](const Field&) { ++observed; };
    const auto rec = run(kGas, g, p, sig, opt);
    REQUIRE(rec.ok());
    REQUIRE(rec.snapshots.size() == 12);  // 0, 0.125, ..., 1.25, 1.3
    for (std::size_t k = 0; k + 1 < rec.snapshots.size(); ++k) {
      CHECK(rec.snapshots[k].time == 0.125 * static_cast<double>(k));
    }
    CHECK(rec.end_time() == 1.3);
    CHECK(observed == 12);
    CHECK(rec.step_times.size() == rec.steps + 1);
    CHECK(rec.step_perturbation.front() <= 1e-14);
    CHECK(rec.min_lambda1 > 0.0);
    CHECK(rec.max_lambda2 > rec.min_lambda1);
  }

  SUBCASE("output") {
    RunOptions opt;
    opt.t_end = 0.01;
    const auto rec = run(kGas, g, p, sig, opt);
    std::ostringstream csv, sum;
    write_snapshots_csv(csv, kGas, g, rec);
    CHECK(csv.str().rfind("t,x,rho,u,c,mach,r,s\n0,0,", 0) == 0);
    const std::string text = csv.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 2 * 101);
    write_run_summary(sum, rec);
    CHECK(sum.str().find("status=ok\n") != std::string::npos);
    CHECK(sum.str().find("nx=101\n") != std::string::npos);
  }
}

TEST_CASE("losing supersonicity stops the run cleanly") {
  const auto p = solve_profile(kGas, kUp, 0.35, 201);
  const auto g = Grid1D::make(0.35, 201);
  for (double eps : {0.03, 0.1, 0.5}) {
    CAPTURE(eps);
    const auto sig = BoundarySignal::make(kUp, kGas, 1.0, eps, SignalShape::Bump);
    RunOptions opt;
    opt.t_end = 4.0;
    opt.snapshot_every = 1.0 / 64.0;
    const auto rec = run(kGas, g, p, sig, opt);
    REQUIRE_FALSE(rec.ok());
    CHECK(rec.failure->kind == ErrorKind::SupersonicityLost);
    CHECK(rec.failure->site.t > 0.0);
    CHECK(rec.failure->site.t < 4.0);
    CHECK(rec.failure->site.x > 0.0);
    CHECK(rec.failure->site.x <= 0.35);
    CHECK(rec.failure->message.find("x=") != std::string::npos);
    CHECK(all_finite(rec));
    CHECK(rec.end_time() < rec.failure->site.t);
  }

  SUBCASE("a single step throws with the site") {
    auto states = std::vector<FlowState>(16, FlowState{1.0, 3.0});
    states[9] = {1.0, 1.2};  // c = sqrt(2) > u
    const auto gas = GasParams::make(2.0, 0.0, 0.0);
    const auto grid = Grid1D::make(1.5, 16);
    const auto sig = BoundarySignal::make({std::sqrt(2.0), 3.0}, gas, 1.0, 0.0, SignalShape::Bump);
    try {
      step(gas, grid, field_from_states(gas, states), sig);
      FAIL("expected SupersonicityLost");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::SupersonicityLost);
      REQUIRE(e.site().has_value());
      CHECK(e.site()->t == 0.0);
      CHECK(e.site()->x == doctest::Approx(0.9));
    }
  }
}
