#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "indyn/errors.hpp"
#include "indyn/goldfish.hpp"
#include "indyn/spectral.hpp"
#include "indyn/verify.hpp"

using namespace indyn;
using namespace indyn::verify;

namespace {

WorldLine sampled(int id, double t0, double t1, std::size_t n, double (*f)(double)) {
  WorldLine line{id, {}};
  const TimeGrid grid{t0, t1, n};
  for (double t : grid.times()) line.samples.push_back({t, f(t), std::nullopt, true});
  return line;
}

ScenarioConfig cm_pair(double a1, double a2, double p1, double p2, double g2, TimeGrid grid) {
  ScenarioConfig c;
  c.model = Model::CalogeroMoser;
  c.gamma_squared = g2;
  c.particles = {{{a1, 0.0}, {p1, 0.0}}, {{a2, 0.0}, {p2, 0.0}}};
  c.time = grid;
  return c;
}

// Repulsive CM pair with A = P = 0 in closed form:
//   x = +-(1/2) sqrt((a + p t)^2 + 4 g / p^2),  g = -gamma_squared > 0.
double repulsive_position(double a, double p, double g, double t) {
  return 0.5 * std::sqrt((a + p * t) * (a + p * t) + 4.0 * g / (p * p));
}

double repulsive_velocity(double a, double p, double g, double t) {
  return 0.25 * p * (a + p * t) / repulsive_position(a, p, g, t);
}

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an indyn::Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_SUITE("verify") {
  TEST_CASE("finite differences are exact for quadratics") {
    const auto line = sampled(0, -1.0, 2.0, 31, [](double t) { return t * t; });
    const auto fd = fd_derivatives(line, {});
    for (std::size_t i = 0; i < line.samples.size(); ++i) {
      REQUIRE(fd.acceleration[i]);
      CHECK(*fd.acceleration[i] == doctest::Approx(2.0).epsilon(1e-10));
      CHECK(*fd.velocity[i] == doctest::Approx(2.0 * line.samples[i].t).scale(1.0).epsilon(1e-10));
    }
  }

  TEST_CASE("second-difference error obeys the Taylor bound") {
    const double h = 0.05;
    const auto cubic = sampled(0, 0.0, 2.0, 41, [](double t) { return t * t * t; });
    auto fd = fd_derivatives(cubic, {});
    for (std::size_t i = 1; i + 1 < cubic.samples.size(); ++i) {
      // x'''' = 0, so the bound is roundoff only.
      CHECK(std::abs(*fd.acceleration[i] - 6.0 * cubic.samples[i].t) <= 1e-9);
    }
    const auto wave = sampled(0, 0.0, 2.0, 41, [](double t) { return std::sin(t); });
    fd = fd_derivatives(wave, {});
    for (std::size_t i = 1; i + 1 < wave.samples.size(); ++i) {
      CHECK(std::abs(*fd.acceleration[i] + std::sin(wave.samples[i].t)) <= h * h / 12.0 + 1e-12);
    }
  }

  TEST_CASE("event window masks seven samples") {
    const auto line = sampled(4, 0.0, 1.0, 101, [](double t) { return t; });
    EventRecord ev;
    ev.t_event = 0.5;
    ev.line_ids = {4, 5};
    const std::vector<EventRecord> events{ev};
    const auto fd = fd_derivatives(line, events);
    std::size_t undefined = 0;
    for (std::size_t i = 0; i < fd.velocity.size(); ++i) {
      if (!fd.velocity[i]) {
        ++undefined;
        CHECK(std::abs(line.samples[i].t - 0.5) <= 0.03 + 1e-12);
      }
    }
    CHECK(undefined == 7);

    ev.line_ids = {1, 2};
    CHECK(std::all_of(fd_derivatives(line, std::vector<EventRecord>{ev}).velocity.begin(),
                      fd_derivatives(line, std::vector<EventRecord>{ev}).velocity.end(),
                      [](const auto& v) { return v.has_value(); }));
  }

  TEST_CASE("short grids are rejected") {
    const auto line = sampled(0, 0.0, 1.0, 4, [](double t) { return t; });
    CHECK(code_of([&] { fd_derivatives(line, {}); }) == ErrorCode::GridTooShort);
  }

  TEST_CASE("free particle has no Newton residual") {
    WorldLineSet set;
    set.lines.push_back(sampled(0, 0.0, 1.0, 101, [](double t) { return 0.3 + 1.7 * t; }));
    for (Model m : {Model::CalogeroMoser, Model::RuijsenaarsSchneider, Model::Goldfish}) {
      const auto report = newton_residual(m, set, 1.0);
      REQUIRE(report.max_newton_residual);
      CHECK(*report.max_newton_residual <= 1e-10);
    }
  }

  TEST_CASE("repulsive CM pair at step 1e-3 satisfies the Newton equation") {
    const auto c = cm_pair(-0.5, 0.5, 1.0, -1.0, -1.0, {-2.0, 2.0, 4001});
    const auto set = spectral::simulate_spectral(c);
    const auto report = newton_residual(Model::CalogeroMoser, set, c.gamma_squared);
    REQUIRE(report.max_newton_residual);
    CHECK(*report.max_newton_residual <= 1e-4);
    CHECK(report.samples_excluded == 0);
  }

  TEST_CASE("Goldfish rest particle has zero residual") {
    ScenarioConfig c;
    c.model = Model::Goldfish;
    c.init_positions = {-1.0, 0.5, 2.0};
    c.init_velocities = {-0.4, 0.0, 0.3};
    c.time = {0.1, 2.0, 191};
    const auto set = goldfish::simulate_goldfish(c);
    const auto report = newton_residual(Model::Goldfish, set, 0.0);
    for (std::size_t j = 0; j < set.lines.size(); ++j) {
      if (std::abs(set.lines[j].samples.front().x - 0.5) < 1e-9) CHECK(report.newton_residual[j] <= 1e-10);
    }
  }

  TEST_CASE("coincidence and RS pole proximity") {
    WorldLineSet set;
    set.lines.push_back(sampled(0, 0.0, 1.0, 11, [](double) { return 0.0; }));
    set.lines.push_back(sampled(1, 0.0, 1.0, 11, [](double) { return 0.0; }));
    CHECK(code_of([&] { newton_residual(Model::CalogeroMoser, set, 1.0); }) == ErrorCode::ParticleCoincidence);

    set.lines[1] = sampled(1, 0.0, 1.0, 11, [](double) { return 1.0; });
    CHECK(code_of([&] { newton_residual(Model::RuijsenaarsSchneider, set, 1.0); }) == ErrorCode::RsPoleProximity);
  }

  TEST_CASE("ODE oracle: free flight") {
    const std::vector<double> x0{-1.0, 0.5, 2.0}, v0{0.3, -0.2, 1.0}, times{0.0, 0.25, 0.5, 1.0};
    for (Model m : {Model::CalogeroMoser, Model::RuijsenaarsSchneider}) {
      const auto ode = ode_oracle(m, x0, v0, 0.0, 0.0, 1.0, 1e-10, times);
      REQUIRE(ode.times.size() == times.size());
      for (std::size_t s = 0; s < times.size(); ++s) {
        for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(ode.positions[s][j] - (x0[j] + v0[j] * times[s])) <= 1e-10);
      }
    }
  }

  TEST_CASE("ODE oracle matches the repulsive closed form") {
    const double a = -1.0, p = 2.0, g = 1.0, tol = 1e-9;
    const double t0 = -0.5, t1 = 0.5;
    std::vector<double> times;
    for (int i = 0; i <= 20; ++i) times.push_back(t0 + 0.05 * i);
    times.back() = t1;
    // Particle 1 at +x, particle 2 at -x (A = P = 0).
    const std::vector<double> x0{repulsive_position(a, p, g, t0), -repulsive_position(a, p, g, t0)};
    const std::vector<double> v0{repulsive_velocity(a, p, g, t0), -repulsive_velocity(a, p, g, t0)};
    const auto ode = ode_oracle(Model::CalogeroMoser, x0, v0, -g, t0, t1, tol, times);
    double worst = 0.0;
    for (std::size_t s = 0; s < ode.times.size(); ++s) {
      const double x = repulsive_position(a, p, g, ode.times[s]);
      worst = std::max({worst, std::abs(ode.positions[s][0] - x), std::abs(ode.positions[s][1] + x)});
    }
    CHECK(worst <= 10.0 * tol);
    CHECK(ode.invariant_drift <= 1e-7);
  }

  TEST_CASE("ODE oracle aborts before the attractive collision") {
    // a1 = a2 = 0, p = (1, -1), gamma^2 = 1: positions +-(1/2) sqrt(4 t^2 - 1)
    // reach zero at t1 = -1/2 from the left.
    const double t0 = -2.0, t1 = -0.5;
    const double x = 0.5 * std::sqrt(4 * t0 * t0 - 1), v = 2 * t0 / std::sqrt(4 * t0 * t0 - 1);
    const std::vector<double> x0{-x, x}, v0{-v, v};
    try {
      ode_oracle(Model::CalogeroMoser, x0, v0, 1.0, t0, 0.0, 1e-9, std::vector<double>{});
      FAIL("expected CollisionApproach");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::CollisionApproach);
    }
    // Up to slightly before t1 the integration is fine.
    CHECK_NOTHROW(ode_oracle(Model::CalogeroMoser, x0, v0, 1.0, t0, t1 - 0.05, 1e-9, std::vector<double>{}));
  }

  TEST_CASE("conservation report on CM, Goldfish and the asymptotic slopes") {
    const auto cm = cm_pair(-0.5, 0.5, 1.0, -1.0, -1.0, {-3.0, 3.0, 601});
    auto report = conservation_report(Model::CalogeroMoser, spectral::simulate_spectral(cm), cm);
    REQUIRE(report.identity_deviation);
    CHECK(*report.identity_deviation <= 1e-10);
    REQUIRE(report.momentum_deviation);
    CHECK(*report.momentum_deviation <= 1e-3);

    ScenarioConfig gf;
    gf.model = Model::Goldfish;
    gf.init_positions = {-1.0, 1.0};
    gf.init_velocities = {1.0, 0.0};
    gf.time = {0.5, 5.0, 451};
    report = conservation_report(Model::Goldfish, goldfish::simulate_goldfish(gf), gf);
    REQUIRE(report.identity_deviation);
    CHECK(*report.identity_deviation <= 1e-10);
  }

  TEST_CASE("verification is deterministic") {
    const auto c = cm_pair(-0.5, 0.5, 1.0, -1.0, -1.0, {-1.0, 1.0, 201});
    const auto set = spectral::simulate_spectral(c);
    const auto a = newton_residual(Model::CalogeroMoser, set, -1.0);
    const auto b = newton_residual(Model::CalogeroMoser, set, -1.0);
    CHECK(a.newton_residual == b.newton_residual);
    CHECK(oracle_distance(c, set, 1.0, 1e-9) == oracle_distance(c, set, 1.0, 1e-9));
  }
}
