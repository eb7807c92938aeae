#pragma once

#include <functional>

#include "indyn/world_lines.hpp"

namespace indyn {

using SnapshotFn = std::function<RootSnapshot(double)>;

// Shared simulation pipeline: snapshots over the grid, continuity tracking,
// event localization on the real-root count, then velocity estimates.
WorldLineSet run_pipeline(const TimeGrid& grid, const Tolerances& tol, const SnapshotFn& snapshot_at);

}  // namespace indyn
