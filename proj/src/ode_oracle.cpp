#include <algorithm>
#include <cmath>

#include <boost/numeric/odeint.hpp>
#include <fmt/core.h>

#include "indyn/errors.hpp"
#include "indyn/verify.hpp"

namespace indyn::verify {

namespace {

using State = std::vector<double>;
namespace odeint = boost::numeric::odeint;

double min_separation(std::span<const double> x, double& scale) {
  scale = 1.0;
  for (double xi : x) scale = std::max(scale, std::abs(xi));
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  double gap = INFINITY;
  for (std::size_t i = 1; i < sorted.size(); ++i) gap = std::min(gap, sorted[i] - sorted[i - 1]);
  return gap;
}

void check_separation(std::span<const double> x, double t) {
  double scale = 1.0;
  const double gap = min_separation(x, scale);
  if (gap < 1e-6 * scale) {
    throw OdeAbort(ErrorCode::CollisionApproach, fmt::format("separation {} at t = {:.17g}", gap, t), t);
  }
}

}  // namespace

double ode_invariant(Model model, std::span<const double> x, std::span<const double> v, double gamma_squared) {
  double value = 0.0;
  if (model == Model::CalogeroMoser) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      value += 0.5 * v[j] * v[j];
      for (std::size_t k = j + 1; k < x.size(); ++k) {
        const double d = x[j] - x[k];
        value -= gamma_squared / (d * d);
      }
    }
    return value;
  }
  for (double vj : v) value += vj;
  return value;
}

OdeTrajectories ode_oracle(Model model, std::span<const double> x0, std::span<const double> v0,
                           double gamma_squared, double t0, double t1, double tol,
                           std::span<const double> sample_times) {
  const std::size_t n = x0.size();
  if (n == 0 || v0.size() != n) throw Error(ErrorCode::InvalidArgument, "x0 and v0 must have equal nonzero length");
  if (!(t1 > t0) || !(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "need t1 > t0 and tol > 0");
  for (double ts : sample_times) {
    if (ts < t0 || ts > t1) throw Error(ErrorCode::InvalidArgument, fmt::format("sample time {} outside span", ts));
  }
  if (!std::is_sorted(sample_times.begin(), sample_times.end())) {
    throw Error(ErrorCode::InvalidArgument, "sample times must be sorted");
  }
  check_separation(x0, t0);

  const auto system = [&](const State& s, State& ds, double) {
    const std::span<const double> x(s.data(), n), v(s.data() + n, n);
    const auto a = newton_rhs(model, x, v, gamma_squared);
    std::copy(v.begin(), v.end(), ds.begin());
    std::copy(a.begin(), a.end(), ds.begin() + static_cast<std::ptrdiff_t>(n));
  };

  State state(2 * n);
  std::copy(x0.begin(), x0.end(), state.begin());
  std::copy(v0.begin(), v0.end(), state.begin() + static_cast<std::ptrdiff_t>(n));
  const double invariant0 = ode_invariant(model, x0, v0, gamma_squared);

  OdeTrajectories out;
  auto record = [&](double t, const State& s) {
    out.times.push_back(t);
    out.positions.emplace_back(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(n));
    out.velocities.emplace_back(s.begin() + static_cast<std::ptrdiff_t>(n), s.end());
  };

  auto stepper = odeint::make_dense_output(tol, tol, odeint::runge_kutta_dopri5<State>());
  const double span = t1 - t0;
  stepper.initialize(state, t0, std::min(1e-3, tol) * span);
  std::size_t next = 0;
  while (next < sample_times.size() && sample_times[next] == t0) record(t0, state), ++next;

  State interpolated(2 * n);
  while (stepper.current_time() < t1) {
    // Never step past t1: whatever lies beyond the span is not our concern.
    const double remaining = t1 - stepper.current_time();
    if (stepper.current_time_step() > remaining) {
      const State current = stepper.current_state();
      stepper.initialize(current, stepper.current_time(), remaining);
    }
    std::pair<double, double> interval;
    try {
      interval = stepper.do_step(system);
    } catch (const odeint::step_adjustment_error& e) {
      throw OdeAbort(ErrorCode::StepUnderflow,
                     fmt::format("step adjustment failed at t = {:.17g}: {}", stepper.current_time(), e.what()),
                     stepper.current_time());
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ParticleCoincidence) {
        throw OdeAbort(ErrorCode::CollisionApproach, fmt::format("near t = {:.17g}: {}", stepper.current_time(), e.what()),
                       stepper.current_time());
      }
      throw;
    }
    ++out.steps;
    const State& current = stepper.current_state();
    const std::span<const double> x(current.data(), n), v(current.data() + n, n);
    for (double xi : current) {
      if (!std::isfinite(xi)) {
        throw OdeAbort(ErrorCode::StepUnderflow, fmt::format("non-finite state at t = {:.17g}", interval.second),
                       interval.second);
      }
    }
    check_separation(x, interval.second);
    out.invariant_drift = std::max(out.invariant_drift, std::abs(ode_invariant(model, x, v, gamma_squared) - invariant0));

    while (next < sample_times.size() && sample_times[next] <= interval.second) {
      stepper.calc_state(sample_times[next], interpolated);
      record(sample_times[next], interpolated);
      ++next;
    }
    const double dt = interval.second - interval.first;
    if (dt < 1e-15 * std::max(1.0, std::abs(interval.second))) {
      throw OdeAbort(ErrorCode::StepUnderflow, fmt::format("step {} at t = {:.17g}", dt, interval.second),
                     interval.second);
    }
  }
  return out;
}

}  // namespace indyn::verify
