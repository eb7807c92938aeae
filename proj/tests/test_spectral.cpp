#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "indyn/errors.hpp"
#include "indyn/finite_difference.hpp"
#include "indyn/spectral.hpp"

using namespace indyn;
using namespace indyn::spectral;

namespace {

ScenarioConfig pair_config(Model model, Complex a1, Complex a2, Complex p1, Complex p2, double g2) {
  ScenarioConfig c;
  c.model = model;
  c.gamma_squared = g2;
  c.particles = {{a1, p1}, {a2, p2}};
  c.time = {-2.0, 2.0, 401};
  return c;
}

// Roots of z^2 - tr z + det for a 2x2 matrix, by the quadratic formula.
std::pair<Complex, Complex> quadratic_eigenvalues(const ModelMatrix& m) {
  const Complex tr = m(0, 0) + m(1, 1);
  const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const Complex disc = std::sqrt(tr * tr - 4.0 * det);
  return {0.5 * (tr + disc), 0.5 * (tr - disc)};
}

double pair_distance(std::pair<Complex, Complex> x, std::pair<Complex, Complex> y) {
  const double direct = std::max(std::abs(x.first - y.first), std::abs(x.second - y.second));
  const double swapped = std::max(std::abs(x.first - y.second), std::abs(x.second - y.first));
  return std::min(direct, swapped);
}

}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("matrix entries") {
    ScenarioConfig one;
    one.particles = {{{2.0, 0.0}, {3.0, 0.0}}};
    const auto m1 = build_cm_rs_matrix(one, 1.0);
    REQUIRE(m1.rows() == 1);
    CHECK(m1(0, 0) == Complex(5.0, 0.0));

    const auto cm = build_cm_rs_matrix(pair_config(Model::CalogeroMoser, 0, 0, 1, -1, 1), 0.0);
    CHECK(std::abs(cm(0, 1) - Complex(0.5, 0)) < 1e-15);
    CHECK(std::abs(cm(1, 0) - Complex(-0.5, 0)) < 1e-15);

    const auto rs = build_cm_rs_matrix(pair_config(Model::RuijsenaarsSchneider, 0, 0, 1, -1, 1), 0.0);
    CHECK(std::abs(rs(0, 1) - Complex(0.5, 0)) < 1e-15);
    CHECK(std::abs(rs(1, 0) - Complex(0.5, 0)) < 1e-15);

    auto bad = pair_config(Model::CalogeroMoser, 0, 0, 1, 1, 1);
    CHECK_THROWS_AS(build_cm_rs_matrix(bad, 0.0), Error);
  }

  TEST_CASE("roots at time for the symmetric attractive pair") {
    const auto c = pair_config(Model::CalogeroMoser, 0, 0, 1, -1, 1);
    auto snap = roots_at_time_spectral(c, 1.0);
    CHECK(snap.real_count() == 2);
    std::vector<double> xs{snap.roots[0].real(), snap.roots[1].real()};
    std::sort(xs.begin(), xs.end());
    CHECK(xs[0] == doctest::Approx(-std::sqrt(3.0) / 2.0).epsilon(1e-13));
    CHECK(xs[1] == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-13));

    snap = roots_at_time_spectral(c, 0.0);
    CHECK(snap.real_count() == 0);
    for (const auto& z : snap.roots) {
      CHECK(std::abs(z.real()) < 1e-14);
      CHECK(std::abs(std::abs(z.imag()) - 0.5) < 1e-14);
    }

    ScenarioConfig one;
    one.particles = {{{0.5, 0.0}, {-2.0, 0.0}}};
    snap = roots_at_time_spectral(one, 0.25);
    CHECK(snap.real_count() == 1);
    CHECK(snap.roots[0].real() == doctest::Approx(0.0));
  }

  TEST_CASE("two-particle closed form examples") {
    const auto red = TwoParticleReduction::from(0.0, 0.0, 1.0, -1.0);
    auto w = two_particle_worldlines(red, -1.0, 0.0);
    CHECK(std::abs(w.first - Complex(0.5, 0)) < 1e-15);
    CHECK(std::abs(w.second - Complex(-0.5, 0)) < 1e-15);
    w = two_particle_worldlines(red, 1.0, 1.0);
    CHECK(std::abs(w.first - Complex(std::sqrt(3.0) / 2, 0)) < 1e-15);

    const auto free = TwoParticleReduction::from(0.3, -1.0, 0.7, 2.0);
    w = two_particle_worldlines(free, 0.0, 1.5);
    const Complex q1 = 0.3 + 1.5 * 0.7, q2 = -1.0 + 1.5 * 2.0;
    CHECK(pair_distance(w, {q1, q2}) < 1e-14);

    CHECK(std::abs(free.a1() - Complex(0.3, 0)) < 1e-15);
    CHECK(std::abs(free.p2() - Complex(2.0, 0)) < 1e-15);

    const auto degenerate = TwoParticleReduction::from(0.0, 1.0, 1.0, 1.0);
    CHECK_THROWS_AS(two_particle_worldlines(degenerate, 1.0, 0.0), Error);
  }

  TEST_CASE("annihilation interval examples") {
    auto iv = annihilation_interval(TwoParticleReduction::from(0.0, 0.0, 1.0, -1.0), 1.0);
    REQUIRE(iv);
    CHECK(iv->first == doctest::Approx(-0.5));
    CHECK(iv->second == doctest::Approx(0.5));

    CHECK_FALSE(annihilation_interval(TwoParticleReduction::from(0.0, 0.0, 1.0, -1.0), -1.0));

    // a = 1, p = 1
    iv = annihilation_interval(TwoParticleReduction::from(1.0, 0.0, 1.0, 0.0), 1.0);
    REQUIRE(iv);
    CHECK(iv->first == doctest::Approx(-3.0));
    CHECK(iv->second == doctest::Approx(1.0));
  }

  TEST_CASE("N=2 eigenvalues equal the closed form over random draws") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int draw = 0; draw < 100; ++draw) {
      const double g2 = 2.0 * u(rng);
      const double t = 3.0 * u(rng);
      ScenarioConfig c;
      if (draw % 2 == 0) {
        c = pair_config(Model::CalogeroMoser, u(rng), u(rng), 0.5 + std::abs(u(rng)), -0.5 - std::abs(u(rng)), g2);
      } else {
        const Complex a(u(rng), u(rng)), p(u(rng), 0.2 + std::abs(u(rng)));
        c = pair_config(Model::CalogeroMoser, a, std::conj(a), p, std::conj(p), g2);
      }
      const auto snap = roots_at_time_spectral(c, t);
      const auto closed = two_particle_worldlines(TwoParticleReduction::from(c), g2, t);
      const auto quad = quadratic_eigenvalues(build_cm_rs_matrix(c, t));
      const std::pair<Complex, Complex> engine{snap.roots[0], snap.roots[1]};
      const double scale = 1.0 + std::abs(closed.first) + std::abs(closed.second);
      CHECK(pair_distance(engine, closed) <= 1e-12 * scale);
      CHECK(pair_distance(quad, closed) <= 1e-12 * scale);
    }
  }

  TEST_CASE("trace identity holds for CM, RS and arbitrary W") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int draw = 0; draw < 40; ++draw) {
      ScenarioConfig c;
      c.model = draw % 2 == 0 ? Model::CalogeroMoser : Model::RuijsenaarsSchneider;
      c.gamma_squared = u(rng);
      for (int i = 0; i < 5; ++i) c.particles.push_back({{2.0 * u(rng), 0.0}, {static_cast<double>(i) - 2.0 + 0.3 * u(rng), 0.0}});
      const double t = 5.0 * u(rng);
      Complex expected(0.0, 0.0);
      for (const auto& p : c.particles) expected += p.a + t * p.p;

      auto check = [&](const std::vector<Complex>& roots) {
        Complex sum(0.0, 0.0);
        double scale = 1.0;
        for (const auto& z : roots) {
          sum += z;
          scale = std::max(scale, std::abs(z));
        }
        CHECK(std::abs(sum - expected) <= 1e-10 * scale);
      };
      check(roots_at_time_spectral(c, t).roots);

      ModelMatrix w = ModelMatrix::Random(5, 5);
      check(eigenvalues(build_matrix_with(c, w, t), t));
    }
  }

  TEST_CASE("repulsive CM with real data has only real eigenvalues") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int draw = 0; draw < 30; ++draw) {
      ScenarioConfig c;
      c.gamma_squared = -0.1 - std::abs(u(rng));
      for (int i = 0; i < 4; ++i) c.particles.push_back({{3.0 * u(rng), 0.0}, {static_cast<double>(i) + 0.5 * u(rng), 0.0}});
      const auto m = build_cm_rs_matrix(c, 2.0 * u(rng));
      CHECK((m - m.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
      for (double t = -10.0; t <= 10.0; t += 0.5) CHECK(roots_at_time_spectral(c, t).real_count() == 4);
    }
  }

  TEST_CASE("repulsive pair: no events and exchanged asymptotic slopes") {
    auto c = pair_config(Model::CalogeroMoser, -0.5, 0.5, 1.0, -1.0, -1.0);
    c.time = {-50.0, 50.0, 2001};
    const auto set = simulate_spectral(c);
    CHECK(set.events.empty());
    REQUIRE(set.lines.size() == 2);
    for (const auto& line : set.lines) {
      const double v_start = *line.samples[1].v_est;
      const double v_end = *line.samples[line.samples.size() - 2].v_est;
      CHECK(v_start * v_end < 0.0);
      CHECK(std::abs(std::abs(v_start) - 1.0) < 0.05);
      CHECK(std::abs(std::abs(v_end) - 1.0) < 0.05);
    }
  }

  TEST_CASE("attractive pair: annihilation and creation at the closed-form times") {
    auto c = pair_config(Model::CalogeroMoser, 0.4, -0.1, 0.9, -0.8, 0.7);
    c.tol.event = 1e-10;
    const auto set = simulate_spectral(c);
    REQUIRE(set.events.size() == 2);
    // t_{1,2} = -a/p -+ 2 gamma / p^2 with a = a1 - a2, p = p1 - p2.
    const double a = 0.5, p = 1.7, gamma = std::sqrt(0.7);
    CHECK(set.events[0].kind == EventKind::Annihilation);
    CHECK(set.events[1].kind == EventKind::Creation);
    CHECK(std::abs(set.events[0].t_event - (-a / p - 2 * gamma / (p * p))) <= 1e-10);
    CHECK(std::abs(set.events[1].t_event - (-a / p + 2 * gamma / (p * p))) <= 1e-10);
    CHECK(set.events[0].t_bracket_width <= 1e-10);
  }

  TEST_CASE("five particles: one survivor with a curved world line") {
    ScenarioConfig c;
    c.gamma_squared = 1.0;
    for (double p : {-2.0, -1.0, 0.3, 1.0, 2.0}) c.particles.push_back({{0.0, 0.0}, {p, 0.0}});
    c.time = {-1.5, 1.5, 301};
    const auto set = simulate_spectral(c);
    std::size_t alive_at_zero = 0;
    const WorldLine* survivor = nullptr;
    for (const auto& line : set.lines) {
      if (line.samples[150].alive) {
        ++alive_at_zero;
        survivor = &line;
      }
    }
    REQUIRE(alive_at_zero == 1);
    const auto fd = fd_derivatives(*survivor, set.events);
    double peak = 0.0;
    for (const auto& a : fd.acceleration) {
      if (a) peak = std::max(peak, std::abs(*a));
    }
    CHECK(peak > 1e-3);
  }

  TEST_CASE("eigenvalue velocities match finite differences of eigenvalues") {
    auto c = pair_config(Model::RuijsenaarsSchneider, -1.0, 1.0, 2.0, 0.5, -1.0);
    const double t = 0.3, h = 1e-5;
    const auto flows = eigenvalue_velocities(c, t);
    const auto plus = eigenvalues(build_cm_rs_matrix(c, t + h), t + h);
    const auto minus = eigenvalues(build_cm_rs_matrix(c, t - h), t - h);
    for (const auto& [lambda, velocity] : flows) {
      auto nearest = [&](const std::vector<Complex>& set) {
        return *std::min_element(set.begin(), set.end(),
                                 [&](Complex x, Complex y) { return std::abs(x - lambda) < std::abs(y - lambda); });
      };
      const Complex fd = (nearest(plus) - nearest(minus)) / (2 * h);
      CHECK(std::abs(fd - velocity) < 1e-6);
    }
  }
}
