#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "indyn/scenario.hpp"

namespace indyn {

// All roots of the defining equation at one time, before continuity matching.
struct RootSnapshot {
  double t = 0.0;
  std::vector<Complex> roots;
  std::vector<bool> real_mask;
  // Optional per-root tag (Sinh-Gordon: -1 for u -> -inf, +1 for u -> +inf).
  std::vector<int> labels;

  std::size_t real_count() const;
};

// Threshold below which |im| counts as real: tol_im * (1 + max|root|).
double real_threshold(std::span<const Complex> roots, double tol_im);

// Builds a snapshot and fills real_mask; real roots get their imaginary part
// zeroed.
RootSnapshot classify_roots(double t, std::vector<Complex> roots, double tol_im,
                            std::vector<int> labels = {});

enum class EventKind { Annihilation, Creation };

std::string_view event_kind_name(EventKind kind);

struct EventRecord {
  EventKind kind = EventKind::Annihilation;
  double t_event = 0.0;
  std::array<int, 2> line_ids{-1, -1};
  double t_bracket_width = 0.0;
  // Bracket bounds; t_bracket_width == t_hi - t_lo.
  double t_lo = 0.0;
  double t_hi = 0.0;
};

struct LineSample {
  double t = 0.0;
  // Real part of the tracked root; while the line is not alive this is the
  // real part of its complex-plane continuation.
  double x = 0.0;
  std::optional<double> v_est;
  bool alive = true;
};

struct WorldLine {
  int id = 0;
  std::vector<LineSample> samples;
};

struct WorldLineSet {
  std::vector<WorldLine> lines;
  std::vector<EventRecord> events;
  // Scenario constants reported alongside the trajectories (e.g. the
  // Sinh-Gordon Hamiltonian).
  std::map<std::string, double> constants;
};

// Continuity matching of consecutive snapshots. Every root of the multiset is
// carried as one line; alive mirrors the real classification. Roots are
// matched by an optimal assignment on the distance to a linear prediction of
// each line, never reassigning real/complex status beyond what the change in
// real-root count forces, and never across labels. Each count change yields a
// provisional event whose bracket is the grid interval.
WorldLineSet track_roots(std::span<const RootSnapshot> snapshots);

using RootCounter = std::function<std::size_t(double)>;

struct EventLocation {
  double t_event = 0.0;
  double width = 0.0;
};

// Bisection on the real-root count. Requires the counts at the two ends to
// differ by exactly 2; throws NoCountChange or MultipleTransitions otherwise.
EventLocation localize_event(const RootCounter& counter, double t_lo, double t_hi, double tol_event);

struct Transition {
  EventLocation location;
  int count_change = 0;  // +-2 per transition
};

// Splits a bracket with an arbitrary even count change into individual
// transitions, bisecting until each sub-bracket carries a change of 2.
// Transitions that cannot be separated within tol_event are reported with
// the same location once per pair.
std::vector<Transition> localize_transitions(const RootCounter& counter, double t_lo, double t_hi,
                                             double tol_event);

}  // namespace indyn
