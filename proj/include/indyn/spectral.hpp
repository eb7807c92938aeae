#pragma once

// Rational Calogero-Moser and Ruijsenaars-Schneider world lines as the
// eigenvalues of Q(t) + W, with Q(t) = diag(a_i + t p_i) and
//   W_CM = gamma / (p_j - p_k),   W_RS = gamma p_j / (p_j - p_k)   (j != k),
// gamma being the principal square root of gamma_squared.

#include <optional>
#include <utility>

#include <Eigen/Core>

#include "indyn/world_lines.hpp"

namespace indyn::spectral {

using ModelMatrix = Eigen::MatrixXcd;

// Coupling gamma = sqrt(gamma_squared), imaginary in the repulsive regime.
Complex coupling(double gamma_squared);

// Q(t) + W for a CM or RS scenario. Throws DegenerateMomenta on equal p.
ModelMatrix build_cm_rs_matrix(const ScenarioConfig& config, double t);

// Q(t) + W for an arbitrary off-diagonal part (diagonal of `w` is ignored).
ModelMatrix build_matrix_with(const ScenarioConfig& config, const ModelMatrix& w, double t);

// All N eigenvalues of `m` (general complex solver, no symmetry assumed).
std::vector<Complex> eigenvalues(const ModelMatrix& m, double t);

RootSnapshot roots_at_time_spectral(const ScenarioConfig& config, double t);

// Exact eigenvalue velocities d(lambda_i)/dt = (V^-1 diag(p) V)_ii, paired
// with the eigenvalues they belong to.
std::vector<std::pair<Complex, Complex>> eigenvalue_velocities(const ScenarioConfig& config, double t);

// Center-of-mass / relative coordinates of a two-particle scenario.
struct TwoParticleReduction {
  Complex A;  // a1 + a2
  Complex a;  // a1 - a2
  Complex P;  // p1 + p2
  Complex p;  // p1 - p2

  static TwoParticleReduction from(Complex a1, Complex a2, Complex p1, Complex p2);
  static TwoParticleReduction from(const ScenarioConfig& config);

  Complex a1() const { return 0.5 * (A + a); }
  Complex a2() const { return 0.5 * (A - a); }
  Complex p1() const { return 0.5 * (P + p); }
  Complex p2() const { return 0.5 * (P - p); }
};

// Closed-form CM pair: (A + P t +- sqrt((a + p t)^2 - 4 gamma^2 / p^2)) / 2,
// principal square root, "+" branch first.
std::pair<Complex, Complex> two_particle_worldlines(const TwoParticleReduction& red, double gamma_squared,
                                                    double t);

// Interval without real solutions for an attractive real-data CM pair:
// (-a/p - 2 gamma / p^2, -a/p + 2 gamma / p^2). Empty for gamma_squared <= 0.
std::optional<std::pair<double, double>> annihilation_interval(const TwoParticleReduction& red,
                                                               double gamma_squared);

WorldLineSet simulate_spectral(const ScenarioConfig& config);

}  // namespace indyn::spectral
