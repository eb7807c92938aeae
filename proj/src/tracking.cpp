#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <fmt/core.h>

#include "indyn/assignment.hpp"
#include "indyn/errors.hpp"
#include "indyn/world_lines.hpp"

namespace indyn {

std::size_t RootSnapshot::real_count() const {
  return static_cast<std::size_t>(std::count(real_mask.begin(), real_mask.end(), true));
}

double real_threshold(std::span<const Complex> roots, double tol_im) {
  double max_abs = 0.0;
  for (const auto& z : roots) max_abs = std::max(max_abs, std::abs(z));
  return tol_im * (1.0 + max_abs);
}

RootSnapshot classify_roots(double t, std::vector<Complex> roots, double tol_im, std::vector<int> labels) {
  RootSnapshot snap;
  snap.t = t;
  const double threshold = real_threshold(roots, tol_im);
  snap.real_mask.resize(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    snap.real_mask[i] = std::abs(roots[i].imag()) <= threshold;
    if (snap.real_mask[i]) roots[i] = Complex(roots[i].real(), 0.0);
  }
  snap.roots = std::move(roots);
  snap.labels = std::move(labels);
  return snap;
}

std::string_view event_kind_name(EventKind kind) {
  return kind == EventKind::Annihilation ? "annihilation" : "creation";
}

namespace {

struct LineState {
  Complex current;
  Complex previous;
  bool has_previous = false;
  bool alive = true;
  bool flipped_last = false;
  int label = 0;
};

// Assigns `rows` (line indices) to `cols` (root indices) of equal length.
// When `status_penalty` is set, an assignment changing real/complex status
// costs more than any combination of distances, so the number of status
// changes is minimal.
void assign_block(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols,
                  const std::vector<Complex>& predicted, const std::vector<LineState>& lines,
                  const RootSnapshot& snap, bool status_penalty, bool label_penalty,
                  std::vector<int>& line_to_root) {
  const std::size_t n = rows.size();
  if (n == 0) return;
  double scale = 1.0;
  for (auto r : rows) scale = std::max(scale, 1.0 + std::abs(predicted[r]));
  for (auto c : cols) scale = std::max(scale, 1.0 + std::abs(snap.roots[c]));

  std::vector<double> cost(n * n);
  double max_cost = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const double d = std::abs(snap.roots[cols[b]] - predicted[rows[a]]) / scale;
      cost[a * n + b] = d * d;
      max_cost = std::max(max_cost, d * d);
    }
  }
  const double flip_cost = static_cast<double>(n) * max_cost + 1.0;
  const double label_cost = static_cast<double>(n) * (max_cost + flip_cost) + 1.0;
  for (std::size_t a = 0; a < n; ++a) {
    const auto& line = lines[rows[a]];
    for (std::size_t b = 0; b < n; ++b) {
      if (status_penalty && line.alive != snap.real_mask[cols[b]]) cost[a * n + b] += flip_cost;
      if (label_penalty && line.label != snap.labels[cols[b]]) cost[a * n + b] += label_cost;
    }
  }
  const auto solution = solve_assignment(cost, n);
  for (std::size_t a = 0; a < n; ++a) line_to_root[rows[a]] = static_cast<int>(cols[solution[a]]);
}

// Matches within one label group. With an unchanged real count, live lines
// only see real roots and dead lines only complex ones.
void assign_group(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols,
                  const std::vector<Complex>& predicted, const std::vector<LineState>& lines,
                  const RootSnapshot& snap, std::vector<int>& line_to_root) {
  std::vector<std::size_t> live_rows, dead_rows, real_cols, complex_cols;
  for (auto r : rows) (lines[r].alive ? live_rows : dead_rows).push_back(r);
  for (auto c : cols) (snap.real_mask[c] ? real_cols : complex_cols).push_back(c);
  if (live_rows.size() == real_cols.size()) {
    assign_block(live_rows, real_cols, predicted, lines, snap, false, false, line_to_root);
    assign_block(dead_rows, complex_cols, predicted, lines, snap, false, false, line_to_root);
  } else {
    assign_block(rows, cols, predicted, lines, snap, true, false, line_to_root);
  }
}

std::vector<int> match_snapshot(const std::vector<Complex>& predicted, const std::vector<LineState>& lines,
                                const RootSnapshot& snap, bool has_labels) {
  const std::size_t n = lines.size();
  std::vector<int> line_to_root(n, -1);
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  if (!has_labels) {
    assign_group(all, all, predicted, lines, snap, line_to_root);
    return line_to_root;
  }
  std::set<int> label_values;
  for (const auto& line : lines) label_values.insert(line.label);
  std::vector<std::vector<std::size_t>> row_groups, col_groups;
  bool consistent = true;
  for (int label : label_values) {
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 0; i < n; ++i) {
      if (lines[i].label == label) rows.push_back(i);
      if (snap.labels[i] == label) cols.push_back(i);
    }
    consistent = consistent && rows.size() == cols.size();
    row_groups.push_back(std::move(rows));
    col_groups.push_back(std::move(cols));
  }
  if (!consistent) {
    // Label multiplicities changed; fall back to one penalized problem.
    assign_block(all, all, predicted, lines, snap, true, true, line_to_root);
    return line_to_root;
  }
  for (std::size_t g = 0; g < row_groups.size(); ++g) {
    assign_group(row_groups[g], col_groups[g], predicted, lines, snap, line_to_root);
  }
  return line_to_root;
}

// Pairs the lines that changed status in one grid interval into provisional
// events, pairing neighbours in x.
void add_provisional_events(const std::vector<int>& changed, const WorldLineSet& set, std::size_t sample,
                            EventKind kind, double t_lo, double t_hi, std::vector<EventRecord>& events) {
  std::vector<int> ids = changed;
  std::stable_sort(ids.begin(), ids.end(), [&](int a, int b) {
    return set.lines[a].samples[sample].x < set.lines[b].samples[sample].x;
  });
  for (std::size_t k = 0; k + 1 < ids.size(); k += 2) {
    EventRecord ev;
    ev.kind = kind;
    ev.line_ids = {std::min(ids[k], ids[k + 1]), std::max(ids[k], ids[k + 1])};
    ev.t_lo = t_lo;
    ev.t_hi = t_hi;
    ev.t_event = 0.5 * (t_lo + t_hi);
    ev.t_bracket_width = t_hi - t_lo;
    events.push_back(ev);
  }
}

}  // namespace

WorldLineSet track_roots(std::span<const RootSnapshot> snapshots) {
  WorldLineSet set;
  if (snapshots.empty()) return set;

  const std::size_t n = snapshots.front().roots.size();
  const bool has_labels = !snapshots.front().labels.empty();
  for (std::size_t k = 0; k < snapshots.size(); ++k) {
    const auto& s = snapshots[k];
    if (s.roots.size() != n || s.real_mask.size() != n || (has_labels && s.labels.size() != n) ||
        (!has_labels && !s.labels.empty())) {
      throw Error(ErrorCode::InconsistentSnapshotSize,
                  fmt::format("snapshot {} at t={} has {} roots, expected {}", k, s.t, s.roots.size(), n));
    }
    if (k > 0 && !(s.t > snapshots[k - 1].t)) {
      throw Error(ErrorCode::InvalidArgument, fmt::format("snapshot times not increasing at index {}", k));
    }
  }

  const auto& first = snapshots.front();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Complex za = first.roots[a], zb = first.roots[b];
    if (za.real() != zb.real()) return za.real() < zb.real();
    return za.imag() < zb.imag();
  });

  std::vector<LineState> state(n);
  set.lines.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = order[i];
    state[i].current = first.roots[r];
    state[i].alive = first.real_mask[r];
    state[i].label = has_labels ? first.labels[r] : 0;
    set.lines[i].id = static_cast<int>(i);
    set.lines[i].samples.reserve(snapshots.size());
    set.lines[i].samples.push_back({first.t, first.roots[r].real(), std::nullopt, state[i].alive});
  }

  std::vector<Complex> predicted(n);
  for (std::size_t k = 1; k < snapshots.size(); ++k) {
    const auto& snap = snapshots[k];
    const double dt = snap.t - snapshots[k - 1].t;
    const double dt_prev = k >= 2 ? snapshots[k - 1].t - snapshots[k - 2].t : dt;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& s = state[i];
      predicted[i] = (s.has_previous && !s.flipped_last)
                         ? s.current + (s.current - s.previous) * (dt / dt_prev)
                         : s.current;
    }
    const auto line_to_root = match_snapshot(predicted, state, snap, has_labels);

    std::vector<int> died, born;
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = static_cast<std::size_t>(line_to_root[i]);
      auto& s = state[i];
      const bool alive = snap.real_mask[r];
      s.flipped_last = alive != s.alive;
      if (s.flipped_last) (alive ? born : died).push_back(static_cast<int>(i));
      s.previous = s.current;
      s.has_previous = true;
      s.current = snap.roots[r];
      s.alive = alive;
      set.lines[i].samples.push_back({snap.t, snap.roots[r].real(), std::nullopt, alive});
    }
    const double t_lo = snapshots[k - 1].t;
    add_provisional_events(died, set, k - 1, EventKind::Annihilation, t_lo, snap.t, set.events);
    add_provisional_events(born, set, k, EventKind::Creation, t_lo, snap.t, set.events);
  }
  return set;
}

}  // namespace indyn
