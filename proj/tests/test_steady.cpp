#include <cmath>
#include <random>
#include <sstream>

#include "checks.hpp"
#include "doctest.h"
#include "fanno/steady.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace fanno;
using fanno::test::rel;

namespace {

oracle::SteadyOde ode_for(const GasParams& gas, const UpstreamState& up) {
  return {gas.gamma(), gas.alpha(), gas.beta(), up.c_minus, up.u_minus};
}

double oracle_blowup(const GasParams& gas, const UpstreamState& up, double x_max,
                     double slope_limit = 1e8) {
  const auto b = oracle::rk4_blowup(ode_for(gas, up), x_max, x_max / 2e5, slope_limit);
  REQUIRE(b.found);
  return b.x;
}

}  // namespace

TEST_CASE("upstream state validation") {
  CHECK(test::error_kind([] { UpstreamState::make(0.0, 1.0); }) == ErrorKind::InvalidParameter);
  CHECK(test::error_kind([] { UpstreamState::make(1.0, -1.0); }) == ErrorKind::InvalidParameter);
  const auto gas = GasParams::make(2.0, 0.0, -1.0);
  const auto up = UpstreamState::from_density(gas, 0.5, 2.0);
  CHECK(rel(up.c_minus, std::sqrt(2.0) * std::sqrt(0.5)) < 1e-15);
  CHECK(rel(up.rho_minus(gas), 0.5) < 1e-14);
  CHECK(up.supersonic());
  CHECK(UpstreamState::make(1.0, 1.0).sonic());
}

TEST_CASE("critical speed") {
  for (double g : {1.4, 2.0, 5.0}) {
    CHECK(critical_speed({1.0, 1.0}, GasParams::make(g, 0, 0)) == 1.0);
  }
  CHECK(critical_speed({8.0, 1.0}, GasParams::make(2.0, 0, 0)) ==
        doctest::Approx(4.0).epsilon(1e-14));
  CHECK(critical_speed({4.0, 1.0}, GasParams::make(3.0, 0, 0)) ==
        doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("potential values and slope") {
  const UpstreamState unit{1.0, 1.0};
  CHECK(implicit_potential(GasParams::make(2.0, 0.0, -1.0), unit, 1.0) ==
        doctest::Approx(1.5).epsilon(1e-15));
  CHECK(implicit_potential(GasParams::make(3.0, 1.0, -1.0), unit, 1.0) ==
        doctest::Approx(0.25).epsilon(1e-15));
  // s^(gamma+1)/(gamma+1) - K ln s at s = 1
  CHECK(implicit_potential(GasParams::make(2.0, -2.0, -1.0), unit, 1.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(test::error_kind([&] {
          implicit_potential(GasParams::make(2.0, 0.0, -1.0), unit, 0.0);
        }) == ErrorKind::NonPositiveSpeed);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> g(1.1, 3.0), a(-2.5, 2.5), c(0.3, 2.0), u(0.3, 2.0),
      t(0.3, 3.0);
  for (int k = 0; k < 40; ++k) {
    const double gamma = g(rng);
    double alpha = a(rng);
    if (k % 4 == 1) alpha = 1.0;
    if (k % 4 == 2) alpha = -gamma;
    const auto gas = GasParams::make(gamma, alpha, -1.0);
    const UpstreamState up{c(rng), u(rng)};
    auto h = [&](double s) { return implicit_potential(gas, up, s); };

    const double s = t(rng);
    const double fd = oracle::central_difference(h, s, 1e-5 * s);
    CHECK(std::abs(fd - potential_slope(gas, up, s)) <=
          1e-6 * std::max(1.0, std::abs(fd)) * std::max(1.0, std::pow(s, -alpha)));

    const double sc = critical_speed(up, gas);
    CHECK(std::abs(potential_slope(gas, up, sc)) <= 1e-13 * std::pow(sc, -alpha));
    const double d1 = oracle::central_difference(h, sc, 1e-5 * sc);
    const double d2 = oracle::second_difference(h, sc, 1e-3 * sc);
    CHECK(d2 > 0.0);
    CHECK(std::abs(d1) <= 1e-8 * std::abs(d2) * sc);
  }
}

TEST_CASE("profile sound speed keeps the mass flux") {
  const auto gas = GasParams::make(1.4, 0.0, -1.0);
  const UpstreamState up{1.3, 2.1};
  const double q = up.c_minus * std::pow(up.u_minus, 0.2);
  for (double u : {0.5, 1.0, 2.1, 4.0}) {
    CHECK(rel(profile_sound_speed(gas, up, u) * std::pow(u, 0.2), q) < 1e-14);
  }
  CHECK(profile_sound_speed(gas, up, up.u_minus) == doctest::Approx(up.c_minus).epsilon(1e-15));
}

TEST_CASE("maximal duct length") {
  const UpstreamState up{1.0, 2.0};
  const auto l1 = max_duct_length(GasParams::make(2.0, 0.0, -1.0), up);
  CHECK(l1.kind == DuctLimit::Kind::Choking);
  CHECK(rel(l1.length, 0.360118425157690252849) < 1e-13);
  CHECK(l1.admits(0.35));
  CHECK_FALSE(l1.admits(0.4));
  CHECK_FALSE(l1.admits(l1.length));

  const auto l2 = max_duct_length(GasParams::make(3.0, 1.0, -1.0), up);
  CHECK(l2.kind == DuctLimit::Kind::Choking);
  CHECK(rel(l2.length, 0.159073590279972654709) < 1e-13);

  SUBCASE("choking lengths match the ODE oracle in all three cases") {
    for (const auto& gas : {GasParams::make(2.0, 0.0, -1.0), GasParams::make(3.0, 1.0, -1.0),
                            GasParams::make(2.0, -2.0, -1.0), GasParams::make(1.4, 0.5, -0.7)}) {
      for (const UpstreamState u : {UpstreamState{1.0, 2.0}, UpstreamState{1.5, 0.6}}) {
        const auto lim = max_duct_length(gas, u);
        REQUIRE(lim.kind == DuctLimit::Kind::Choking);
        CHECK(rel(oracle_blowup(gas, u, 2.0 * lim.length), lim.length) < 1e-6);
      }
    }
  }

  SUBCASE("scales like 1/|beta|") {
    const auto base = max_duct_length(GasParams::make(2.0, 0.0, -1.0), up).length;
    for (double beta : {-2.0, -0.5, -0.25, -3.0}) {
      const auto l = max_duct_length(GasParams::make(2.0, 0.0, beta), up).length;
      CHECK(rel(l * std::abs(beta), base) < 1e-14);
    }
  }

  SUBCASE("positive beta") {
    CHECK(max_duct_length(GasParams::make(2.0, 0.0, 1.0), up).kind ==
          DuctLimit::Kind::Unbounded);
    CHECK(max_duct_length(GasParams::make(2.0, 1.0, 1.0), up).kind ==
          DuctLimit::Kind::Unbounded);
    CHECK(max_duct_length(GasParams::make(2.0, -2.0, 1.0), up).kind ==
          DuctLimit::Kind::Unbounded);
    CHECK(max_duct_length(GasParams::make(2.0, 0.0, 1.0), {2.0, 1.0}).kind ==
          DuctLimit::Kind::Unbounded);

    const auto blow_gas = GasParams::make(2.0, 3.0, 1.0);
    const auto blow = max_duct_length(blow_gas, up);
    REQUIRE(blow.kind == DuctLimit::Kind::Blowup);
    CHECK(rel(oracle_blowup(blow_gas, up, 2.0 * blow.length, 1e14), blow.length) < 1e-6);

    const auto vac_gas = GasParams::make(2.0, -3.0, 1.0);
    const UpstreamState sub{2.0, 1.0};
    const auto vac = max_duct_length(vac_gas, sub);
    REQUIRE(vac.kind == DuctLimit::Kind::Vacuum);
    CHECK(rel(oracle_blowup(vac_gas, sub, 2.0 * vac.length), vac.length) < 1e-6);
  }

  CHECK(max_duct_length(GasParams::make(2.0, 0.0, 0.0), up).kind == DuctLimit::Kind::Unbounded);
}

TEST_CASE("regime classification") {
  CHECK(classify_regime(GasParams::make(2.0, 0.0, -1.0), {1.0, 2.0}) ==
        Regime::SupersonicChoking);
  CHECK(classify_regime(GasParams::make(2.0, 0.0, 1.0), {2.0, 1.0}) ==
        Regime::SubsonicDecelerating);
  CHECK(classify_regime(GasParams::make(2.0, 0.0, 1.0), {1.0, 2.0}) ==
        Regime::SupersonicAccelerating);
  CHECK(classify_regime(GasParams::make(2.0, 0.0, -1.0), {2.0, 1.0}) == Regime::SubsonicChoking);
  CHECK(test::error_kind([] {
          classify_regime(GasParams::make(2.0, 0.0, 0.0), {2.0, 1.0});
        }) == ErrorKind::ZeroBeta);
  CHECK(to_string(Regime::SupersonicChoking) == "supersonic_choking");
}

TEST_CASE("profile orderings agree with the classification") {
  struct Case {
    double beta, c, u;
  };
  for (double alpha : {0.0, 1.0, -2.0, 0.7}) {
    for (const Case cs : {Case{1.0, 2.0, 1.0}, Case{1.0, 1.0, 2.0}, Case{-1.0, 2.0, 1.0},
                          Case{-1.0, 1.0, 2.0}}) {
      const auto gas = GasParams::make(2.0, alpha, cs.beta);
      const UpstreamState up{cs.c, cs.u};
      const auto lim = max_duct_length(gas, up);
      const double length = lim.bounded() ? 0.9 * lim.length : 1.0;
      const auto p = solve_profile(gas, up, length, 401);
      REQUIRE(p.regime.has_value());
      CHECK(*p.regime == classify_regime(gas, up));
      CHECK(test::ordering_violations(p, *p.regime) == 0);
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (up.supersonic()) {
          CHECK(p.u_tilde[i] > p.c_tilde[i]);
        } else {
          CHECK(p.u_tilde[i] < p.c_tilde[i]);
        }
      }
    }
  }
}

TEST_CASE("solve_profile") {
  const auto gas = GasParams::make(2.0, 0.0, -1.0);
  const UpstreamState up{1.0, 2.0};

  SUBCASE("inlet values are exact and the grid ends on the duct length") {
    const auto p = solve_profile(gas, up, 0.35, 201);
    CHECK(p.u_tilde[0] == up.u_minus);
    CHECK(p.c_tilde[0] == up.c_minus);
    CHECK(p.xs.front() == 0.0);
    CHECK(p.xs.back() == 0.35);
    CHECK(p.limit.kind == DuctLimit::Kind::Choking);
  }

  SUBCASE("zero friction gives a constant profile") {
    const auto p = solve_profile(gas.with_beta(0.0), up, 3.0, 33);
    CHECK_FALSE(p.regime.has_value());
    for (std::size_t i = 0; i < p.size(); ++i) {
      CHECK(p.u_tilde[i] == up.u_minus);
      CHECK(p.c_tilde[i] == up.c_minus);
    }
  }

  SUBCASE("mass flux and potential are conserved") {
    for (const auto& g : {gas, GasParams::make(3.0, 1.0, -1.0), GasParams::make(1.4, -1.4, 0.8)}) {
      const auto lim = max_duct_length(g, up);
      const double length = lim.bounded() ? 0.95 * lim.length : 2.0;
      const auto p = solve_profile(g, up, length, 101);
      const double e = 0.5 * (g.gamma() - 1.0);
      const double q = up.c_minus * std::pow(up.u_minus, e);
      const double h0 = implicit_potential(g, up, up.u_minus);
      for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(rel(p.c_tilde[i] * std::pow(p.u_tilde[i], e), q) < 1e-10);
        CHECK(std::abs(implicit_potential(g, up, p.u_tilde[i]) - h0 - g.beta() * p.xs[i]) <
              1e-10 * std::max(1.0, std::abs(h0)));
        CHECK(rel(p.rho_tilde[i], density_from_sound_speed(g, p.c_tilde[i])) < 1e-13);
      }
    }
  }

  SUBCASE("matches RK4 on the reference case") {
    const auto p = solve_profile(gas, up, 0.35, 201);
    const auto ref = oracle::rk4_profile(ode_for(gas, up), 0.35, 200000, 201);
    double err = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      err = std::max(err, std::abs(p.u_tilde[i] - ref[i]));
    }
    CHECK(err <= 1e-8 * up.u_minus);
    CHECK(rel(solve_velocity_at(gas, up, 0.35), ref.back()) < 1e-10);
  }

  SUBCASE("failures") {
    CHECK(test::error_kind([&] { solve_profile(gas, up, 0.4, 11); }) == ErrorKind::DuctTooLong);
    CHECK(test::error_kind([&] { solve_profile(gas, {1.0, 1.0}, 0.1, 11); }) ==
          ErrorKind::SonicUpstream);
    CHECK(test::error_kind([&] { solve_profile(gas, up, 0.1, 1); }) ==
          ErrorKind::InvalidParameter);
    CHECK(test::error_kind([&] { solve_profile(gas, up, -0.1, 11); }) ==
          ErrorKind::InvalidParameter);
    try {
      solve_profile(gas, up, 0.4, 11);
    } catch (const Error& e) {
      CHECK(std::string(e.what()).find("l_max=0.36011842515769") != std::string::npos);
    }
  }

  SUBCASE("csv") {
    const auto p = solve_profile(gas, up, 0.35, 3);
    std::ostringstream out;
    write_profile_csv(out, p);
    const auto text = out.str();
    CHECK(text.rfind("x,u_tilde,c_tilde,rho_tilde,mach\n0,2,1,", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
  }
}
