#include "indyn/sinh_gordon.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/LU>
#include <boost/math/tools/roots.hpp>
#include <fmt/core.h>

#include "indyn/errors.hpp"
#include "indyn/pipeline.hpp"

namespace indyn::sg {

namespace {

using Function1d = std::function<double(double)>;

void scan_roots(const Function1d& f, double lo, double hi, std::size_t points, double tol_root,
                std::vector<double>& out) {
  const double dx = (hi - lo) / static_cast<double>(points - 1);
  auto grid = [&](std::size_t i) { return i + 1 == points ? hi : lo + static_cast<double>(i) * dx; };
  double x_prev = grid(0);
  double f_prev = f(x_prev);
  if (f_prev == 0.0) out.push_back(x_prev);
  for (std::size_t i = 1; i < points; ++i) {
    const double x = grid(i);
    const double fx = f(x);
    if (fx == 0.0) {
      out.push_back(x);
    } else if (f_prev != 0.0 && std::signbit(f_prev) != std::signbit(fx)) {
      const auto converged = [tol_root](double a, double b) {
        return std::abs(b - a) <= tol_root * std::max(1.0, std::abs(a));
      };
      std::uintmax_t max_iter = 200;
      const auto bracket = boost::math::tools::toms748_solve(f, x_prev, x, f_prev, fx, converged, max_iter);
      out.push_back(0.5 * (bracket.first + bracket.second));
    }
    x_prev = x;
    f_prev = fx;
  }
}

// Roots of both factors along a parametrized line s -> (x, t).
RootSnapshot scan_snapshot(const SgConfig& config, double time_value,
                           const std::function<LightConePoint(double)>& to_light_cone) {
  const std::size_t n = config.size();
  const double center = 0.5 * (config.scan.x_min + config.scan.x_max);
  double half = 0.5 * (config.scan.x_max - config.scan.x_min);
  std::size_t found = 0;
  for (int expansion = 0; expansion <= 8; ++expansion) {
    const std::size_t base = config.scan.points << expansion;
    for (std::size_t points : {base, 4 * base}) {
      std::vector<std::pair<double, int>> roots;
      for (int sign : {+1, -1}) {
        std::vector<double> xs;
        const Function1d f = [&](double s) {
          const auto p = to_light_cone(s);
          return sg_factor(config, p.x, p.t, sign);
        };
        scan_roots(f, center - half, center + half, points, config.tol_root, xs);
        const int label = sign > 0 ? kMinusInfinity : kPlusInfinity;
        for (double x : xs) roots.emplace_back(x, label);
      }
      found = roots.size();
      if (found > n) {
        throw Error(ErrorCode::RootCountMismatch,
                    fmt::format("found {} roots at time {}, expected {}", found, time_value, n));
      }
      if (found == n) {
        std::stable_sort(roots.begin(), roots.end());
        std::vector<Complex> values;
        std::vector<int> labels;
        for (const auto& [x, label] : roots) {
          values.emplace_back(x, 0.0);
          labels.push_back(label);
        }
        return classify_roots(time_value, std::move(values), config.tol_im, std::move(labels));
      }
    }
    half *= 2.0;
  }
  throw Error(ErrorCode::RootCountMismatch,
              fmt::format("found {} of {} roots at time {} after window expansion", found, n, time_value));
}

}  // namespace

SgConfig SgConfig::from(const ScenarioConfig& config) {
  if (config.model != Model::SinhGordon) {
    throw Error(ErrorCode::InvalidArgument, "not a sinh_gordon scenario");
  }
  return {config.particles, config.scan, config.tol.root, config.tol.im};
}

Eigen::MatrixXcd cauchy_matrix(const std::vector<ParticleParams>& particles) {
  const auto n = static_cast<Eigen::Index>(particles.size());
  Eigen::MatrixXcd v(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex pj = particles[static_cast<std::size_t>(j)].p;
    for (Eigen::Index k = 0; k < n; ++k) v(j, k) = pj / (pj + particles[static_cast<std::size_t>(k)].p);
  }
  return v;
}

double sg_factor(const SgConfig& config, double x, double t, int sign) {
  const auto n = static_cast<Eigen::Index>(config.size());
  Eigen::MatrixXcd m = static_cast<double>(sign) * cauchy_matrix(config.particles);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& particle = config.particles[static_cast<std::size_t>(i)];
    const Complex q = particle.a - t / (particle.p * particle.p);
    Complex exponent = 2.0 * particle.p * (x - q);
    exponent.real(std::clamp(exponent.real(), -kExponentClamp, kExponentClamp));
    m(i, i) += static_cast<double>(particle.epsilon) * std::exp(exponent);
  }

  // det = sign(P) * prod(diag U), accumulated as log-magnitude and phase.
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(m);
  const auto& packed = lu.matrixLU();
  double log_magnitude = 0.0;
  Complex phase(lu.permutationP().determinant(), 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex u = packed(i, i);
    const double mag = std::abs(u);
    if (mag == 0.0) return 0.0;
    log_magnitude += std::log(mag);
    phase *= u / mag;
  }
  if (log_magnitude < kExponentClamp) {
    const Complex det = std::exp(log_magnitude) * phase;
    if (std::abs(det.imag()) > 1e-8 * (1.0 + std::abs(det.real()))) {
      throw Error(ErrorCode::NonRealDeterminant,
                  fmt::format("det = {} + {}i at x={}, t={}", det.real(), det.imag(), x, t));
    }
    return det.real();
  }
  // Dominant regime: only the sign is meaningful.
  if (std::abs(phase.imag()) > 1e-8) {
    throw Error(ErrorCode::NonRealDeterminant, fmt::format("complex phase of a huge determinant at x={}, t={}", x, t));
  }
  return std::copysign(std::exp(kExponentClamp), phase.real());
}

LightConePoint from_lab(double lab_x, double lab_t) { return {0.5 * (lab_x + lab_t), 0.5 * (lab_x - lab_t)}; }

RootSnapshot sg_roots_at_time(const SgConfig& config, double t) {
  return scan_snapshot(config, t, [t](double x) { return LightConePoint{x, t}; });
}

RootSnapshot sg_roots_at_lab_time(const SgConfig& config, double lab_t) {
  return scan_snapshot(config, lab_t, [lab_t](double lab_x) { return from_lab(lab_x, lab_t); });
}

double sg_eq10_residual(double x12, double v12, double a12, int epsilon) {
  if (epsilon != 1 && epsilon != -1) throw Error(ErrorCode::InvalidArgument, "epsilon must be +1 or -1");
  if (!(std::abs(v12) < 2.0)) throw Error(ErrorCode::DomainError, fmt::format("|v12| = {} >= 2", std::abs(v12)));
  if (x12 == 0.0) throw Error(ErrorCode::DomainError, "x12 == 0, sgn undefined");
  const double s = std::sqrt(4.0 - v12 * v12);
  const double inner = 1.0 + a12 * x12 / s;
  if (inner < 0.0) throw Error(ErrorCode::DomainError, fmt::format("negative square-root argument {}", inner));
  const double eps = static_cast<double>(epsilon);
  const double lhs = a12 * std::copysign(1.0, x12) / s;
  const double rhs = 4.0 * eps / (std::cosh(4.0 * x12 / s * std::sqrt(inner)) - eps);
  return lhs - rhs;
}

double hamiltonian(const SgConfig& config) {
  Complex h(0.0, 0.0);
  for (const auto& particle : config.particles) h += 1.0 / particle.p;
  return h.real();
}

WorldLineSet simulate_sg(const ScenarioConfig& config) {
  const SgConfig sg = SgConfig::from(config);
  SnapshotFn snapshot_at;
  if (config.frame == Frame::Lab) {
    snapshot_at = [&sg](double t) { return sg_roots_at_lab_time(sg, t); };
  } else {
    snapshot_at = [&sg](double t) { return sg_roots_at_time(sg, t); };
  }
  WorldLineSet set = run_pipeline(config.time, config.tol, snapshot_at);
  set.constants["hamiltonian"] = hamiltonian(sg);
  return set;
}

}  // namespace indyn::sg
