#include "indyn/plot.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

namespace indyn::io {

namespace {

constexpr double kMargin = 50.0;
constexpr int kTicks = 5;

struct Range {
  double lo = INFINITY;
  double hi = -INFINITY;

  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!(lo <= hi)) lo = -1.0, hi = 1.0;
    if (hi - lo < 1e-12) lo -= 1.0, hi += 1.0;
  }
};

// x at the sample of `line` closest to t.
double position_near(const WorldLine& line, double t) {
  const auto it = std::min_element(line.samples.begin(), line.samples.end(), [t](const LineSample& a, const LineSample& b) {
    return std::abs(a.t - t) < std::abs(b.t - t);
  });
  return it == line.samples.end() ? 0.0 : it->x;
}

}  // namespace

std::string emit_plot(const WorldLineSet& lines, const PlotOptions& options) {
  const double width = std::max(options.width, 200);
  const double height = std::max(options.height, 200);
  Range xr, tr;
  for (const auto& line : lines.lines) {
    for (const auto& s : line.samples) {
      tr.add(s.t);
      if (s.alive) xr.add(s.x);
    }
  }
  xr.finish();
  tr.finish();
  const double plot_w = width - 2 * kMargin;
  const double plot_h = height - 2 * kMargin;
  auto px = [&](double x) { return kMargin + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  auto py = [&](double t) { return height - kMargin - (t - tr.lo) / (tr.hi - tr.lo) * plot_h; };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{:.0f}\" height=\"{:.0f}\" "
      "viewBox=\"0 0 {:.0f} {:.0f}\">\n",
      width, height, width, height);
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  out += "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\" font-family=\"sans-serif\" font-size=\"10\">\n";
  out += fmt::format("<line x1=\"{:.3f}\" y1=\"{:.3f}\" x2=\"{:.3f}\" y2=\"{:.3f}\"/>\n", kMargin, height - kMargin,
                     width - kMargin, height - kMargin);
  out += fmt::format("<line x1=\"{:.3f}\" y1=\"{:.3f}\" x2=\"{:.3f}\" y2=\"{:.3f}\"/>\n", kMargin, kMargin, kMargin,
                     height - kMargin);
  for (int i = 0; i < kTicks; ++i) {
    const double f = static_cast<double>(i) / (kTicks - 1);
    const double xv = xr.lo + f * (xr.hi - xr.lo);
    const double tv = tr.lo + f * (tr.hi - tr.lo);
    const double x = px(xv), y = py(tv);
    out += fmt::format("<line class=\"tick\" x1=\"{:.3f}\" y1=\"{:.3f}\" x2=\"{:.3f}\" y2=\"{:.3f}\"/>\n", x,
                       height - kMargin, x, height - kMargin + 5);
    out += fmt::format("<text x=\"{:.3f}\" y=\"{:.3f}\" text-anchor=\"middle\" stroke=\"none\">{:.3g}</text>\n", x,
                       height - kMargin + 18, xv);
    out += fmt::format("<line class=\"tick\" x1=\"{:.3f}\" y1=\"{:.3f}\" x2=\"{:.3f}\" y2=\"{:.3f}\"/>\n",
                       kMargin - 5, y, kMargin, y);
    out += fmt::format("<text x=\"{:.3f}\" y=\"{:.3f}\" text-anchor=\"end\" stroke=\"none\">{:.3g}</text>\n",
                       kMargin - 8, y + 3, tv);
  }
  out += fmt::format("<text x=\"{:.3f}\" y=\"{:.3f}\" text-anchor=\"middle\" stroke=\"none\">x</text>\n",
                     kMargin + plot_w / 2, height - 10);
  out += fmt::format("<text x=\"{:.3f}\" y=\"{:.3f}\" text-anchor=\"middle\" stroke=\"none\">t</text>\n", 15.0,
                     kMargin + plot_h / 2);
  out += "</g>\n";

  for (const auto& line : lines.lines) {
    out += fmt::format("<g class=\"worldline\" id=\"line-{}\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\">\n",
                       line.id);
    std::string points;
    auto flush = [&]() {
      if (!points.empty()) out += fmt::format("<polyline points=\"{}\"/>\n", points);
      points.clear();
    };
    for (const auto& s : line.samples) {
      if (!s.alive) {
        flush();
        continue;
      }
      if (!points.empty()) points += ' ';
      points += fmt::format("{:.3f},{:.3f}", px(s.x), py(s.t));
    }
    flush();
    out += "</g>\n";
  }

  for (const auto& ev : lines.events) {
    double x = 0.0;
    int found = 0;
    for (const auto& line : lines.lines) {
      if (line.id == ev.line_ids[0] || line.id == ev.line_ids[1]) {
        x += position_near(line, ev.t_event);
        ++found;
      }
    }
    if (found > 0) x /= found;
    out += fmt::format("<circle class=\"event\" cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"4\" fill=\"red\"/>\n", px(x),
                       py(ev.t_event));
  }
  out += "</svg>\n";
  return out;
}

}  // namespace indyn::io
