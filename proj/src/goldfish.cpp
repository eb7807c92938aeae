#include "indyn/goldfish.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <fmt/core.h>

#include "indyn/errors.hpp"
#include "indyn/pipeline.hpp"

namespace indyn::goldfish {

namespace {

// Ascending coefficients of prod_j (x - x_j) and of
// sum_j v_j prod_{k != j} (x - x_k), built together in O(N^2):
//   P_{m+1} = P_m (x - x_{m+1}),  S_{m+1} = S_m (x - x_{m+1}) + v_{m+1} P_m.
struct ProductPair {
  std::vector<double> product;
  std::vector<double> weighted;
};

std::vector<double> times_linear(const std::vector<double>& poly, double root) {
  std::vector<double> out(poly.size() + 1, 0.0);
  for (std::size_t k = 0; k < poly.size(); ++k) {
    out[k + 1] += poly[k];
    out[k] -= root * poly[k];
  }
  return out;
}

ProductPair build_products(const GoldfishInit& init) {
  ProductPair pp{{1.0}, {0.0}};
  for (std::size_t m = 0; m < init.x0.size(); ++m) {
    auto weighted = times_linear(pp.weighted, init.x0[m]);
    for (std::size_t k = 0; k < pp.product.size(); ++k) weighted[k] += init.v0[m] * pp.product[k];
    pp.product = times_linear(pp.product, init.x0[m]);
    pp.weighted = std::move(weighted);
  }
  pp.weighted.resize(pp.product.size(), 0.0);
  return pp;
}

// Horner on ascending coefficients, returning value and derivative.
std::pair<double, double> evaluate_ascending(const std::vector<double>& c, double x) {
  double value = 0.0, slope = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) {
    slope = slope * x + value;
    value = value * x + c[k];
  }
  return {value, slope};
}

// Row/column scaling by powers of two until the off-diagonal 1-norms stop
// improving (Parlett-Reinsch).
void balance(Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  const double gamma = 0.9;
  bool changed = true;
  while (changed) {
    changed = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double row = m.row(i).lpNorm<1>() - std::abs(m(i, i));
      const double col = m.col(i).lpNorm<1>() - std::abs(m(i, i));
      if (row == 0.0 || col == 0.0) continue;
      int exponent = 0;
      std::frexp(row / col, &exponent);
      exponent /= 2;
      if (exponent == 0) continue;
      const double scaled_col = std::ldexp(col, exponent);
      const double scaled_row = std::ldexp(row, -exponent);
      if (scaled_col + scaled_row < gamma * (col + row)) {
        changed = true;
        const double d = m(i, i);
        m.row(i) *= std::ldexp(1.0, -exponent);
        m.col(i) *= std::ldexp(1.0, exponent);
        m(i, i) = d;
      }
    }
  }
}

}  // namespace

GoldfishInit GoldfishInit::from(const ScenarioConfig& config) {
  return {config.init_positions, config.init_velocities};
}

void validate(const GoldfishInit& init) {
  if (init.x0.empty() || init.x0.size() != init.v0.size()) {
    throw Error(ErrorCode::InvalidScenario,
                fmt::format("goldfish needs equal nonzero lengths ({} positions, {} velocities)", init.x0.size(),
                            init.v0.size()));
  }
  for (std::size_t j = 0; j < init.x0.size(); ++j) {
    for (std::size_t k = j + 1; k < init.x0.size(); ++k) {
      if (init.x0[j] == init.x0[k]) {
        throw Error(ErrorCode::CoincidentPositions, fmt::format("x0[{}] == x0[{}]", j, k));
      }
    }
  }
}

double PolynomialCoeffs::operator()(double x) const {
  double value = 0.0;
  for (double c : coeffs) value = value * x + c;
  return value;
}

double PolynomialCoeffs::magnitude(double x) const {
  double value = 0.0;
  for (double c : coeffs) value = value * std::abs(x) + std::abs(c);
  return value;
}

PolynomialCoeffs goldfish_coeffs(const GoldfishInit& init, double t) {
  if (t == 0.0) throw Error(ErrorCode::ZeroTime, "goldfish polynomial is degenerate at t = 0");
  const auto pp = build_products(init);
  const std::size_t n = pp.product.size();
  PolynomialCoeffs out;
  out.coeffs.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.coeffs[n - 1 - k] = pp.product[k] - t * pp.weighted[k];
  return out;
}

std::vector<Complex> polynomial_roots(const PolynomialCoeffs& poly) {
  const std::size_t degree = poly.degree();
  if (degree == 0) return {};
  if (degree == 1) return {Complex(-poly.coeffs[1], 0.0)};
  const auto n = static_cast<Eigen::Index>(degree);
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  companion.diagonal(-1).setOnes();
  for (Eigen::Index i = 0; i < n; ++i) {
    companion(i, n - 1) = -poly.coeffs[degree - static_cast<std::size_t>(i)];
  }
  balance(companion);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::EigenSolverFailure, "companion eigenvalues did not converge");
  }
  const auto& values = solver.eigenvalues();
  return {values.data(), values.data() + values.size()};
}

RootSnapshot goldfish_roots(const GoldfishInit& init, double t, double tol_im) {
  if (t == 0.0) {
    std::vector<Complex> roots(init.x0.begin(), init.x0.end());
    return classify_roots(t, std::move(roots), tol_im);
  }
  return classify_roots(t, polynomial_roots(goldfish_coeffs(init, t)), tol_im);
}

double root_velocity(const GoldfishInit& init, double x, double t) {
  const auto pp = build_products(init);
  const auto [weighted, weighted_slope] = evaluate_ascending(pp.weighted, x);
  const double product_slope = evaluate_ascending(pp.product, x).second;
  return weighted / (product_slope - t * weighted_slope);
}

double lax_degeneracy_residual(const std::vector<double>& velocities) {
  const auto n = static_cast<Eigen::Index>(velocities.size());
  const Eigen::Map<const Eigen::RowVectorXd> v(velocities.data(), n);
  const Eigen::MatrixXd lax = Eigen::VectorXd::Ones(n) * v;
  const Eigen::MatrixXd deviation = lax * lax - v.sum() * lax;
  return deviation.cwiseAbs().maxCoeff();
}

WorldLineSet simulate_goldfish(const ScenarioConfig& config) {
  if (config.model != Model::Goldfish) {
    throw Error(ErrorCode::InvalidArgument, "simulate_goldfish needs a goldfish scenario");
  }
  const auto init = GoldfishInit::from(config);
  validate(init);
  const double tol_im = config.tol.im;
  return run_pipeline(config.time, config.tol,
                      [&init, tol_im](double t) { return goldfish_roots(init, t, tol_im); });
}

}  // namespace indyn::goldfish
