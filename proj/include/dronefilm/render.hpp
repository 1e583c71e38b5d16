#pragma once

#include <string>
#include <utility>
#include <vector>

#include "dronefilm/trace.hpp"

namespace dronefilm {

inline constexpr double kCellPixels = 24.0;

// One SVG frame: grey squares are obstacles, stars are actors, circles are
// agents with a translucent FOV sector (apex at the agent, along its facing,
// radius fov range). A covered actor's star is outlined in the colour of the
// lowest-id agent covering it. Coordinates are printed with 2 decimals.
std::string render_frame_svg(const TraceFrame& frame, const GridMap& map, const FovModel& fov);

// (timestep, svg) per coverage record.
std::vector<std::pair<int, std::string>> render_trace(const ParsedTrace& trace);

}  // namespace dronefilm
