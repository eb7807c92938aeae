#include "indyn/pipeline.hpp"

#include <algorithm>

#include "indyn/finite_difference.hpp"

namespace indyn {

WorldLineSet run_pipeline(const TimeGrid& grid, const Tolerances& tol, const SnapshotFn& snapshot_at) {
  const auto times = grid.times();
  std::vector<RootSnapshot> snapshots;
  snapshots.reserve(times.size());
  for (double t : times) snapshots.push_back(snapshot_at(t));

  WorldLineSet set = track_roots(snapshots);
  const RootCounter counter = [&](double t) { return snapshot_at(t).real_count(); };

  // Provisional events sharing a grid interval are localized together.
  std::vector<EventRecord> localized;
  auto& provisional = set.events;
  for (std::size_t k = 0; k < provisional.size();) {
    std::size_t end = k;
    while (end < provisional.size() && provisional[end].t_lo == provisional[k].t_lo) ++end;
    const auto transitions = localize_transitions(counter, provisional[k].t_lo, provisional[k].t_hi, tol.event);

    std::vector<EventRecord> annihilations, creations;
    for (std::size_t i = k; i < end; ++i) {
      (provisional[i].kind == EventKind::Annihilation ? annihilations : creations).push_back(provisional[i]);
    }
    std::size_t next_annihilation = 0, next_creation = 0;
    for (const auto& tr : transitions) {
      auto& pool = tr.count_change < 0 ? annihilations : creations;
      auto& next = tr.count_change < 0 ? next_annihilation : next_creation;
      if (next >= pool.size()) continue;
      EventRecord ev = pool[next++];
      ev.t_event = tr.location.t_event;
      ev.t_bracket_width = tr.location.width;
      ev.t_lo = tr.location.t_event - 0.5 * tr.location.width;
      ev.t_hi = tr.location.t_event + 0.5 * tr.location.width;
      localized.push_back(ev);
    }
    k = end;
  }
  std::stable_sort(localized.begin(), localized.end(),
                   [](const EventRecord& a, const EventRecord& b) { return a.t_event < b.t_event; });
  set.events = std::move(localized);
  assign_velocity_estimates(set);
  return set;
}

}  // namespace indyn
