#include "dronefilm/visibility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dronefilm {

namespace {
constexpr double kYawStep = 2.0 * std::numbers::pi / kYawBins;
constexpr double kAngleEps = 1e-9;
}  // namespace

double Heading::radians() const { return kYawStep * yaw; }
double Heading::dx() const { return std::cos(radians()); }
double Heading::dy() const { return std::sin(radians()); }

Heading Heading::toward(double dx, double dy) {
  if (dx == 0.0 && dy == 0.0) return Heading{0};
  double bins = std::round(std::atan2(dy, dx) / kYawStep);
  int idx = static_cast<int>(bins) % kYawBins;
  if (idx < 0) idx += kYawBins;
  return Heading{idx};
}

bool line_of_sight(const GridMap& grid, Cell from, Cell to) {
  int dx = std::abs(to.x - from.x);
  int dy = -std::abs(to.y - from.y);
  int sx = from.x < to.x ? 1 : -1;
  int sy = from.y < to.y ? 1 : -1;
  int err = dx + dy;
  Cell c = from;
  while (true) {
    if (c == to) return true;
    if (c != from && grid.blocked(c)) return false;
    int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      c.x += sx;
    }
    if (e2 <= dx) {
      err += dx;
      c.y += sy;
    }
  }
}

bool covers(Cell agent, Heading facing, Cell actor, const FovModel& fov, const GridMap& grid,
            const VisibilityFn& visible) {
  if (agent == actor) return false;
  double vx = actor.x - agent.x;
  double vy = actor.y - agent.y;
  double dist = std::hypot(vx, vy);
  if (dist > fov.range_cells + kAngleEps) return false;
  double cosang = (vx * facing.dx() + vy * facing.dy()) / dist;
  double ang = std::acos(std::clamp(cosang, -1.0, 1.0)) * 180.0 / std::numbers::pi;
  if (ang > fov.half_angle_deg + kAngleEps) return false;
  return visible(grid, agent, actor);
}

}  // namespace dronefilm
