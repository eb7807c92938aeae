#include <cmath>
#include <cstdlib>

#include <fmt/core.h>

#include "indyn/errors.hpp"
#include "indyn/world_lines.hpp"

namespace indyn {

namespace {

int count_change(std::size_t from, std::size_t to) {
  return static_cast<int>(to) - static_cast<int>(from);
}

void split_transitions(const RootCounter& counter, double lo, double hi, std::size_t c_lo, std::size_t c_hi,
                       double tol_event, std::vector<Transition>& out) {
  const int delta = count_change(c_lo, c_hi);
  if (delta == 0) return;
  if (std::abs(delta) == 2) {
    try {
      out.push_back({localize_event(counter, lo, hi, tol_event), delta});
      return;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::MultipleTransitions) throw;
    }
  }
  const double mid = lo + 0.5 * (hi - lo);
  if (hi - lo <= tol_event || mid <= lo || mid >= hi) {
    const int sign = delta > 0 ? 2 : -2;
    for (int k = 0; k < std::abs(delta) / 2; ++k) out.push_back({{mid, hi - lo}, sign});
    return;
  }
  const std::size_t c_mid = counter(mid);
  split_transitions(counter, lo, mid, c_lo, c_mid, tol_event, out);
  split_transitions(counter, mid, hi, c_mid, c_hi, tol_event, out);
}

}  // namespace

EventLocation localize_event(const RootCounter& counter, double t_lo, double t_hi, double tol_event) {
  if (!(t_lo < t_hi)) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("empty bracket [{}, {}]", t_lo, t_hi));
  }
  const std::size_t c_lo = counter(t_lo);
  const std::size_t c_hi = counter(t_hi);
  const int delta = count_change(c_lo, c_hi);
  if (delta == 0) {
    throw Error(ErrorCode::NoCountChange, fmt::format("real-root count {} at both ends of [{}, {}]", c_lo, t_lo, t_hi));
  }
  if (std::abs(delta) > 2) {
    throw Error(ErrorCode::MultipleTransitions,
                fmt::format("count changes {} -> {} within [{}, {}]", c_lo, c_hi, t_lo, t_hi));
  }
  double lo = t_lo, hi = t_hi;
  while (hi - lo > tol_event) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const std::size_t c = counter(mid);
    if (c == c_lo) {
      lo = mid;
    } else if (c == c_hi) {
      hi = mid;
    } else {
      throw Error(ErrorCode::MultipleTransitions,
                  fmt::format("count {} at t={} differs from both ends ({}, {})", c, mid, c_lo, c_hi));
    }
  }
  return {lo + 0.5 * (hi - lo), hi - lo};
}

std::vector<Transition> localize_transitions(const RootCounter& counter, double t_lo, double t_hi,
                                             double tol_event) {
  std::vector<Transition> out;
  split_transitions(counter, t_lo, t_hi, counter(t_lo), counter(t_hi), tol_event, out);
  return out;
}

}  // namespace indyn
