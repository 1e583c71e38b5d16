#include "dronefilm/render.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace dronefilm {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                    "#17becf", "#e377c2", "#8c564b", "#bcbd22", "#7f7f7f"};

const char* agent_color(int id) { return kPalette[(id % 10 + 10) % 10]; }

std::string f2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  // Avoid "-0.00".
  if (std::string(buf) == "-0.00") return "0.00";
  return buf;
}

struct Canvas {
  int height_cells;
  double px(Cell c) const { return (c.x + 0.5) * kCellPixels; }
  double py(Cell c) const { return (height_cells - c.y - 0.5) * kCellPixels; }
};

std::string star(double cx, double cy, const char* stroke) {
  std::string pts;
  const double outer = 0.45 * kCellPixels;
  const double inner = 0.19 * kCellPixels;
  for (int i = 0; i < 10; ++i) {
    const double r = i % 2 == 0 ? outer : inner;
    const double a = std::numbers::pi / 2.0 + i * std::numbers::pi / 5.0;
    if (i) pts += " ";
    pts += f2(cx + r * std::cos(a)) + "," + f2(cy - r * std::sin(a));
  }
  std::string out = "<polygon class=\"actor\" points=\"" + pts + "\" fill=\"#f2c200\"";
  if (stroke) {
    out += " stroke=\"" + std::string(stroke) + "\" stroke-width=\"2.50\"";
  } else {
    out += " stroke=\"none\"";
  }
  return out + "/>\n";
}

std::string sector(double cx, double cy, Heading facing, const FovModel& fov, const char* color) {
  const double r = fov.range_cells * kCellPixels;
  if (fov.half_angle_deg >= 180.0) {
    return "<circle class=\"fov\" cx=\"" + f2(cx) + "\" cy=\"" + f2(cy) + "\" r=\"" + f2(r) + "\" fill=\"" + color +
           "\" fill-opacity=\"0.15\"/>\n";
  }
  const double half = fov.half_angle_deg * std::numbers::pi / 180.0;
  const double a0 = facing.radians() - half;
  const double a1 = facing.radians() + half;
  // y is flipped on screen, so counter-clockwise in grid space is sweep 0.
  const int large = 2.0 * fov.half_angle_deg > 180.0 ? 1 : 0;
  return "<path class=\"fov\" d=\"M " + f2(cx) + " " + f2(cy) + " L " + f2(cx + r * std::cos(a0)) + " " +
         f2(cy - r * std::sin(a0)) + " A " + f2(r) + " " + f2(r) + " 0 " + std::to_string(large) + " 0 " +
         f2(cx + r * std::cos(a1)) + " " + f2(cy - r * std::sin(a1)) + " Z\" fill=\"" + color +
         "\" fill-opacity=\"0.15\"/>\n";
}

}  // namespace

std::string render_frame_svg(const TraceFrame& frame, const GridMap& map, const FovModel& fov) {
  const Canvas canvas{map.height()};
  const double w = map.width() * kCellPixels;
  const double h = map.height() * kCellPixels;
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + f2(w) + "\" height=\"" + f2(h) +
                    "\" viewBox=\"0 0 " + f2(w) + " " + f2(h) + "\">\n";
  svg += "<rect width=\"" + f2(w) + "\" height=\"" + f2(h) + "\" fill=\"#ffffff\" stroke=\"#cccccc\"/>\n";
  for (Cell c : map.obstacles()) {
    svg += "<rect class=\"obstacle\" x=\"" + f2(c.x * kCellPixels) + "\" y=\"" +
           f2((map.height() - 1 - c.y) * kCellPixels) + "\" width=\"" + f2(kCellPixels) + "\" height=\"" +
           f2(kCellPixels) + "\" fill=\"#555555\"/>\n";
  }
  for (const auto& agent : frame.coverage.agents) {
    svg += sector(canvas.px(agent.cell), canvas.py(agent.cell), agent.facing, fov, agent_color(agent.agent_id));
  }
  for (const auto& actor : frame.coverage.actors) {
    const char* stroke = nullptr;
    int best = 0;
    for (const auto& agent : frame.coverage.agents) {
      if (agent.covered && agent.actor_id == actor.id && (!stroke || agent.agent_id < best)) {
        stroke = agent_color(agent.agent_id);
        best = agent.agent_id;
      }
    }
    svg += star(canvas.px(actor.cell), canvas.py(actor.cell), stroke);
  }
  for (const auto& agent : frame.coverage.agents) {
    svg += "<circle class=\"agent\" cx=\"" + f2(canvas.px(agent.cell)) + "\" cy=\"" + f2(canvas.py(agent.cell)) +
           "\" r=\"" + f2(0.35 * kCellPixels) + "\" fill=\"" + agent_color(agent.agent_id) + "\"/>\n";
  }
  svg += "<text x=\"4.00\" y=\"14.00\" font-family=\"monospace\" font-size=\"12\">t=" + std::to_string(frame.t) +
         "</text>\n";
  svg += "</svg>\n";
  return svg;
}

std::vector<std::pair<int, std::string>> render_trace(const ParsedTrace& trace) {
  std::vector<std::pair<int, std::string>> frames;
  for (const auto& frame : trace.frames) frames.emplace_back(frame.t, render_frame_svg(frame, trace.map, trace.fov));
  return frames;
}

}  // namespace dronefilm
