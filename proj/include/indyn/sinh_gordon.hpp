#pragma once

// World lines of Sinh-Gordon singularities: the real zeros in x of
//   det(A(x,t) + v) det(A(x,t) - v),
//   A = diag(eps_i exp(2 p_i (x - q_i(t)))),  q_i(t) = q0_i - t / p_i^2,
//   v_jk = p_j / (p_j + p_k).
// Each factor is scanned separately; roots of (A + v) are singularities with
// u -> -inf (label -1), roots of (A - v) have u -> +inf (label +1).

#include <Eigen/Core>

#include "indyn/world_lines.hpp"

namespace indyn::sg {

inline constexpr int kMinusInfinity = -1;
inline constexpr int kPlusInfinity = +1;

// Exponents of A are clamped to this magnitude (natural-log scale).
inline constexpr double kExponentClamp = 700.0;

struct SgConfig {
  std::vector<ParticleParams> particles;  // a holds q0
  ScanWindow scan;
  double tol_root = 1e-13;
  double tol_im = 1e-8;

  static SgConfig from(const ScenarioConfig& config);
  std::size_t size() const { return particles.size(); }
};

Eigen::MatrixXcd cauchy_matrix(const std::vector<ParticleParams>& particles);

// Real value of det(A(x,t) + sign v), from a complex LU factorization.
// Throws NonRealDeterminant when the imaginary part exceeds
// 1e-8 (1 + |re|), which signals broken conjugate pairing.
double sg_factor(const SgConfig& config, double x, double t, int sign);

// Light-cone coordinates of a lab-frame point: x = (X + T)/2, t = (X - T)/2.
struct LightConePoint {
  double x;
  double t;
};
LightConePoint from_lab(double lab_x, double lab_t);

// Labeled real roots in x at light-cone time t, sorted by x. The scan window
// is refined once at 4x resolution and then doubled up to 8 times until N
// roots are found; throws RootCountMismatch otherwise.
RootSnapshot sg_roots_at_time(const SgConfig& config, double t);

// Same in the lab frame: roots in X along the line of constant T.
RootSnapshot sg_roots_at_lab_time(const SgConfig& config, double lab_t);

// Left side minus right side of the implicit two-body equation of motion in
// the center-of-mass frame,
//   a sgn(x) / s = 4 eps / (cosh(4 x / s * sqrt(1 + a x / s)) - eps),
//   s = sqrt(4 - v^2),
// for relative coordinate x, velocity v, acceleration a. Throws DomainError
// for |v| >= 2, x == 0, or a negative inner square-root argument.
double sg_eq10_residual(double x12, double v12, double a12, int epsilon);

// H = sum_i 1/p_i (real for conjugate-paired data).
double hamiltonian(const SgConfig& config);

WorldLineSet simulate_sg(const ScenarioConfig& config);

}  // namespace indyn::sg
