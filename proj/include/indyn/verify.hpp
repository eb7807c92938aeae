#pragma once

// Independent checks on simulated world lines: finite-difference Newton
// residuals, exact identities, and direct integration of the equations of
// motion.
//
//   CM:        x_j'' = sum_k 2 g2 / (x_k - x_j)^3
//   RS:        x_j'' = sum_k 2 g2 x_j' x_k' / ((x_j - x_k)(g2 - (x_j - x_k)^2))
//   Goldfish:  x_j'' = 2 sum_k x_j' x_k' / (x_j - x_k)
//
// with g2 = gamma_squared.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "indyn/errors.hpp"
#include "indyn/finite_difference.hpp"
#include "indyn/world_lines.hpp"

namespace indyn::verify {

using indyn::fd_derivatives;

struct VerificationReport {
  // Per-line max |x'' - F(x, x')| over usable interior samples.
  std::vector<double> newton_residual;
  std::optional<double> max_newton_residual;
  // Trace (CM/RS) or root-sum (Goldfish) identity, max over samples of
  // |deviation| / (1 + max|x|).
  std::optional<double> identity_deviation;
  // Max |I(t) - I(t0)| of the ODE oracle's conserved quantity.
  std::optional<double> hamiltonian_drift;
  // Max engine/oracle trajectory distance.
  std::optional<double> oracle_distance;
  // Max |sorted asymptotic slopes - sorted p| (CM/RS, real data).
  std::optional<double> momentum_deviation;
  std::size_t samples_used = 0;
  std::size_t samples_excluded = 0;
  std::vector<std::string> notes;
};

// Right-hand side of the model's Newton equation. Throws
// ParticleCoincidence when two positions are closer than 1e-6 (1 + max|x|)
// and, for RS, RsPoleProximity when |g2 - (x_j - x_k)^2| < 1e-8.
std::vector<double> newton_rhs(Model model, std::span<const double> x, std::span<const double> v,
                               double gamma_squared);

// Max Newton residual over interior samples where every line has a
// finite-difference acceleration. Samples closer than `event_margin` to an
// event are excluded as well.
VerificationReport newton_residual(Model model, const WorldLineSet& lines, double gamma_squared,
                                   double event_margin = 0.0);

// Identity deviation from the tracked lines and, for real-data CM/RS
// scenarios, the asymptotic slopes at |t| = asymptotic_time against p.
VerificationReport conservation_report(Model model, const WorldLineSet& lines, const ScenarioConfig& config,
                                       double asymptotic_time = 1e3);

struct OdeTrajectories {
  std::vector<double> times;
  std::vector<std::vector<double>> positions;   // [sample][particle]
  std::vector<std::vector<double>> velocities;  // [sample][particle]
  double invariant_drift = 0.0;                 // CM energy, RS/Goldfish total velocity
  std::size_t steps = 0;
};

// CollisionApproach or StepUnderflow from ode_oracle, with the time reached.
class OdeAbort : public Error {
 public:
  OdeAbort(ErrorCode code, const std::string& message, double t) : Error(code, message), t_(t) {}
  double time() const noexcept { return t_; }

 private:
  double t_;
};

// Embedded Runge-Kutta 4(5) (Dormand-Prince) with dense output at
// `sample_times` (inside [t0, t1]), absolute and relative tolerance `tol`.
// Aborts with CollisionApproach once two particles come closer than
// 1e-6 max(1, max|x|), and StepUnderflow if the step collapses.
OdeTrajectories ode_oracle(Model model, std::span<const double> x0, std::span<const double> v0,
                           double gamma_squared, double t0, double t1, double tol,
                           std::span<const double> sample_times);

// Integrates the Newton equation from the first sample of `lines`, using the
// engine's exact velocities there, over [t0, t0 + span] and returns the max
// |x_engine - x_oracle| at the grid samples inside the span. Every line must
// stay alive over the span (CM, RS, Goldfish only).
double oracle_distance(const ScenarioConfig& config, const WorldLineSet& lines, double span, double tol);

// Conserved quantity monitored by ode_oracle.
double ode_invariant(Model model, std::span<const double> x, std::span<const double> v, double gamma_squared);

}  // namespace indyn::verify
