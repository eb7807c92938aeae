#pragma once

// Goldfish model positions as the roots of the algebraic equation in the
// initial data,
//   sum_j v_j / (x - x_j) = 1 / t,
// cleared to the monic polynomial
//   P(x) = prod_j (x - x_j) - t sum_j v_j prod_{k != j} (x - x_k).

#include <vector>

#include "indyn/world_lines.hpp"

namespace indyn::goldfish {

struct GoldfishInit {
  std::vector<double> x0;
  std::vector<double> v0;

  static GoldfishInit from(const ScenarioConfig& config);
};

// Checks equal lengths and pairwise distinct positions.
void validate(const GoldfishInit& init);

// Coefficients in descending powers, coeffs[0] == 1, size N + 1.
struct PolynomialCoeffs {
  std::vector<double> coeffs;

  std::size_t degree() const { return coeffs.size() - 1; }
  double operator()(double x) const;
  // Sum of |c_k| |x|^k: the magnitude scale of a Horner evaluation at x.
  double magnitude(double x) const;
};

// Throws ZeroTime for t == 0 (the caller returns x0 directly).
PolynomialCoeffs goldfish_coeffs(const GoldfishInit& init, double t);

// Roots of a monic real polynomial via eigenvalues of its balanced companion
// matrix.
std::vector<Complex> polynomial_roots(const PolynomialCoeffs& poly);

RootSnapshot goldfish_roots(const GoldfishInit& init, double t, double tol_im);

// Exact velocity of a real root x of P(., t): dx/dt = S(x) / dP/dx, where
// S(x) = sum_j v_j prod_{k != j} (x - x_k).
double root_velocity(const GoldfishInit& init, double x, double t);

// Max-norm of L^2 - (sum v) L for the rank-one L = (1,...,1)^T (x) v.
double lax_degeneracy_residual(const std::vector<double>& velocities);

WorldLineSet simulate_goldfish(const ScenarioConfig& config);

}  // namespace indyn::goldfish
