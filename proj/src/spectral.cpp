#include "indyn/spectral.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <fmt/core.h>

#include "indyn/errors.hpp"
#include "indyn/pipeline.hpp"

namespace indyn::spectral {

namespace {

void require_cm_rs(const ScenarioConfig& config) {
  if (config.model != Model::CalogeroMoser && config.model != Model::RuijsenaarsSchneider) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("spectral engine does not handle model '{}'", model_name(config.model)));
  }
}

void require_nonzero(Complex p) {
  if (p == Complex(0.0, 0.0)) {
    throw Error(ErrorCode::ZeroMomentumDifference, "p1 - p2 vanishes");
  }
}

}  // namespace

Complex coupling(double gamma_squared) { return std::sqrt(Complex(gamma_squared, 0.0)); }

ModelMatrix build_matrix_with(const ScenarioConfig& config, const ModelMatrix& w, double t) {
  const auto n = static_cast<Eigen::Index>(config.particles.size());
  ModelMatrix m = w;
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& particle = config.particles[static_cast<std::size_t>(j)];
    m(j, j) = particle.a + t * particle.p;
  }
  return m;
}

ModelMatrix build_cm_rs_matrix(const ScenarioConfig& config, double t) {
  require_cm_rs(config);
  const auto n = static_cast<Eigen::Index>(config.particles.size());
  const Complex gamma = coupling(config.gamma_squared);
  const bool rs = config.model == Model::RuijsenaarsSchneider;
  ModelMatrix w = ModelMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex pj = config.particles[static_cast<std::size_t>(j)].p;
    for (Eigen::Index k = 0; k < n; ++k) {
      if (j == k) continue;
      const Complex diff = pj - config.particles[static_cast<std::size_t>(k)].p;
      if (diff == Complex(0.0, 0.0)) {
        throw Error(ErrorCode::DegenerateMomenta, fmt::format("p_{} == p_{}", j, k));
      }
      w(j, k) = (rs ? gamma * pj : gamma) / diff;
    }
  }
  return build_matrix_with(config, w, t);
}

std::vector<Complex> eigenvalues(const ModelMatrix& m, double t) {
  Eigen::ComplexEigenSolver<ModelMatrix> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::EigenSolverFailure, fmt::format("eigenvalue iteration did not converge at t={}", t));
  }
  const auto& values = solver.eigenvalues();
  return {values.data(), values.data() + values.size()};
}

RootSnapshot roots_at_time_spectral(const ScenarioConfig& config, double t) {
  return classify_roots(t, eigenvalues(build_cm_rs_matrix(config, t), t), config.tol.im);
}

std::vector<std::pair<Complex, Complex>> eigenvalue_velocities(const ScenarioConfig& config, double t) {
  const ModelMatrix m = build_cm_rs_matrix(config, t);
  Eigen::ComplexEigenSolver<ModelMatrix> solver(m, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::EigenSolverFailure, fmt::format("eigenvalue iteration did not converge at t={}", t));
  }
  const auto& vectors = solver.eigenvectors();
  const auto n = m.rows();
  Eigen::VectorXcd p(n);
  for (Eigen::Index j = 0; j < n; ++j) p(j) = config.particles[static_cast<std::size_t>(j)].p;
  // dM/dt = diag(p); first-order perturbation with left eigenvectors = rows of V^-1.
  const ModelMatrix projected = vectors.partialPivLu().solve(p.asDiagonal() * vectors);
  std::vector<std::pair<Complex, Complex>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) out.emplace_back(solver.eigenvalues()(i), projected(i, i));
  return out;
}

TwoParticleReduction TwoParticleReduction::from(Complex a1, Complex a2, Complex p1, Complex p2) {
  return {a1 + a2, a1 - a2, p1 + p2, p1 - p2};
}

TwoParticleReduction TwoParticleReduction::from(const ScenarioConfig& config) {
  if (config.particles.size() != 2) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("two-particle reduction needs N=2, got {}", config.particles.size()));
  }
  const auto& q = config.particles;
  return from(q[0].a, q[1].a, q[0].p, q[1].p);
}

std::pair<Complex, Complex> two_particle_worldlines(const TwoParticleReduction& red, double gamma_squared,
                                                    double t) {
  require_nonzero(red.p);
  const Complex rel = red.a + red.p * t;
  const Complex root = std::sqrt(rel * rel - 4.0 * gamma_squared / (red.p * red.p));
  const Complex center = red.A + red.P * t;
  return {0.5 * (center + root), 0.5 * (center - root)};
}

std::optional<std::pair<double, double>> annihilation_interval(const TwoParticleReduction& red,
                                                               double gamma_squared) {
  require_nonzero(red.p);
  const double tiny = kPairingTolerance;
  if (std::abs(red.a.imag()) > tiny * std::max(1.0, std::abs(red.a)) ||
      std::abs(red.p.imag()) > tiny * std::max(1.0, std::abs(red.p))) {
    throw Error(ErrorCode::InvalidArgument, "annihilation interval needs real a and p");
  }
  if (gamma_squared <= 0.0) return std::nullopt;
  const double a = red.a.real(), p = red.p.real();
  const double gamma = std::sqrt(gamma_squared);
  const double center = -a / p;
  const double half = 2.0 * gamma / (p * p);
  return std::make_pair(center - half, center + half);
}

WorldLineSet simulate_spectral(const ScenarioConfig& config) {
  require_cm_rs(config);
  return run_pipeline(config.time, config.tol,
                      [&config](double t) { return roots_at_time_spectral(config, t); });
}

}  // namespace indyn::spectral
