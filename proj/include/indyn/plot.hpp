#pragma once

#include <string>

#include "indyn/world_lines.hpp"

namespace indyn::io {

struct PlotOptions {
  int width = 640;
  int height = 480;
};

// SVG world-line figure: position horizontal, time vertical (increasing
// upward). Each line is a <g class="worldline"> holding one <polyline> per
// alive stretch; events are <circle class="event"> markers.
std::string emit_plot(const WorldLineSet& lines, const PlotOptions& options = {});

}  // namespace indyn::io
