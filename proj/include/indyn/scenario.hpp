#pragma once

// Scenario description shared by every engine: model choice, canonical
// free-flight data, time grid and numerical tolerances.

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

namespace indyn {

using Complex = std::complex<double>;

enum class Model { CalogeroMoser, RuijsenaarsSchneider, Goldfish, SinhGordon };

std::string_view model_name(Model model);

// Free-flight data of one particle. For CM/RS the flow is q(t) = a + t p;
// for Sinh-Gordon `a` holds q0 and the flow is q(t) = q0 - t / p^2.
struct ParticleParams {
  Complex a{0.0, 0.0};
  Complex p{0.0, 0.0};
  int epsilon = 1;  // Sinh-Gordon singularity sign, +1 or -1.
};

struct TimeGrid {
  double start = 0.0;
  double end = 1.0;
  std::size_t samples = 2;

  double step() const { return (end - start) / static_cast<double>(samples - 1); }
  double at(std::size_t i) const;
  std::vector<double> times() const;
};

struct Tolerances {
  // Relative threshold for calling a root real: |im| <= im * (1 + max|root|).
  double im = 1e-8;
  double root = 1e-13;
  double event = 1e-10;
  double residual = 1e-4;
  // Extra time margin around events excluded from Newton residual checks.
  double event_margin = 0.0;
};

// Sinh-Gordon bracketing window for the x scan.
struct ScanWindow {
  double x_min = -10.0;
  double x_max = 10.0;
  std::size_t points = 512;
};

// Sinh-Gordon coordinates. LightCone is the (x, t) pair of the defining
// determinant; Lab uses X = x + t, T = x - t, where singularities are
// time-like (|dX/dT| < 1).
enum class Frame { LightCone, Lab };

struct ScenarioConfig {
  Model model = Model::CalogeroMoser;
  double gamma_squared = 0.0;
  std::vector<ParticleParams> particles;
  // Goldfish initial data.
  std::vector<double> init_positions;
  std::vector<double> init_velocities;
  TimeGrid time;
  Tolerances tol;
  ScanWindow scan;
  Frame frame = Frame::LightCone;

  std::size_t size() const {
    return model == Model::Goldfish ? init_positions.size() : particles.size();
  }
};

// Relative tolerance used when matching conjugate partners and comparing
// momenta.
inline constexpr double kPairingTolerance = 1e-12;

// Checks the structural constraints of the scenario and returns it unchanged.
// Throws indyn::Error with UnpairedComplexParameter, DegenerateMomenta,
// NonPositiveRealMomentum, EmptyTimeGrid, CoincidentPositions or
// InvalidScenario.
ScenarioConfig validate_scenario(ScenarioConfig config);

}  // namespace indyn
