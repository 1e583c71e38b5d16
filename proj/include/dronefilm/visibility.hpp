#pragma once

#include <functional>

#include "dronefilm/grid.hpp"

namespace dronefilm {

inline constexpr int kYawBins = 16;

// One of the 16 quantized yaw directions; index 0 points east (+x),
// index 4 north (+y), counter-clockwise.
struct Heading {
  int yaw = 0;

  double radians() const;
  double dx() const;
  double dy() const;

  // Nearest quantized heading for a direction vector. A zero vector maps to 0.
  static Heading toward(double dx, double dy);
  static Heading toward(Cell from, Cell to) {
    return toward(static_cast<double>(to.x - from.x), static_cast<double>(to.y - from.y));
  }

  friend constexpr bool operator==(Heading, Heading) = default;
};

// Camera field of view on the ground plane: a circular sector.
struct FovModel {
  double half_angle_deg = 45.0;
  double range_cells = 9.0;

  friend bool operator==(const FovModel&, const FovModel&) = default;
};

// Visibility seam. The default walks the integer line between the two cells.
using VisibilityFn = std::function<bool(const GridMap&, Cell, Cell)>;

// True iff no cell strictly between `from` and `to` on the Bresenham line is
// an obstacle. Endpoints are not tested.
bool line_of_sight(const GridMap& grid, Cell from, Cell to);

// Sector test: within range, within the half angle of `facing`, and visible.
// An agent on the actor's own cell never covers it.
bool covers(Cell agent, Heading facing, Cell actor, const FovModel& fov, const GridMap& grid,
            const VisibilityFn& visible = line_of_sight);

}  // namespace dronefilm
