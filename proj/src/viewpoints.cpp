#include "dronefilm/viewpoints.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

namespace dronefilm {

double SphericalViewpoint::yaw_radians() const { return 2.0 * std::numbers::pi * yaw_idx / kYawBins; }

double SphericalViewpoint::tilt_radians() const {
  return (std::numbers::pi / 2.0) * (tilt_idx + 0.5) / kTiltBins;
}

double ViewpointOptions::max_distance() const {
  return *std::max_element(distance_bins.begin(), distance_bins.end());
}

std::vector<SphericalViewpoint> build_lattice(int actor_id) {
  std::vector<SphericalViewpoint> lattice;
  lattice.reserve(kLatticeSize);
  for (int yaw = 0; yaw < kYawBins; ++yaw) {
    for (int tilt = 0; tilt < kTiltBins; ++tilt) {
      for (int dist = 0; dist < kDistanceBins; ++dist) lattice.push_back({actor_id, yaw, tilt, dist});
    }
  }
  return lattice;
}

std::optional<GridViewpoint> to_grid(const SphericalViewpoint& vp, Cell actor_pos, const GridMap& grid,
                                     const ViewpointOptions& options) {
  const double delta = options.distance_bins.at(vp.dist_idx);
  const long range = std::lround(delta * std::cos(vp.tilt_radians()));
  if (range <= 0) return std::nullopt;
  const Cell dir{static_cast<int>(std::lround(std::cos(vp.yaw_radians()))),
                 static_cast<int>(std::lround(std::sin(vp.yaw_radians())))};
  const double max_dist = options.max_distance() + 1e-9;

  auto acceptable = [&](long k) -> std::optional<Cell> {
    if (k < 1) return std::nullopt;
    Cell c{actor_pos.x + static_cast<int>(k) * dir.x, actor_pos.y + static_cast<int>(k) * dir.y};
    if (!grid.in_bounds(c) || grid.blocked(c)) return std::nullopt;
    if (std::hypot(c.x - actor_pos.x, c.y - actor_pos.y) > max_dist) return std::nullopt;
    if (!line_of_sight(grid, c, actor_pos)) return std::nullopt;
    return c;
  };

  const long bound = std::max(grid.width(), grid.height());
  for (long offset = 0; offset <= bound; ++offset) {
    for (long k : {range + offset, range - offset}) {
      if (auto c = acceptable(k)) return GridViewpoint{vp.actor_id, *c, Heading::toward(*c, actor_pos), vp};
      if (offset == 0) break;
    }
  }
  return std::nullopt;
}

std::vector<GridViewpoint> feasible_viewpoints(int actor_id, Cell actor_pos, const GridMap& grid,
                                               const ViewpointOptions& options) {
  std::vector<GridViewpoint> out;
  for (const auto& vp : build_lattice(actor_id)) {
    if (auto g = to_grid(vp, actor_pos, grid, options)) out.push_back(*g);
  }
  return out;
}

int yaw_separation(int yaw_a, int yaw_b) {
  int d = std::abs(yaw_a - yaw_b) % kYawBins;
  return std::min(d, kYawBins - d);
}

std::vector<GridViewpoint> select_diverse(int k, std::span<const GridViewpoint> feasible) {
  return extend_diverse({}, k, feasible, {});
}

std::vector<GridViewpoint> extend_diverse(std::span<const GridViewpoint> seeds, int extra,
                                          std::span<const GridViewpoint> feasible, std::span<const Cell> taken) {
  std::vector<int> yaws;
  std::vector<Cell> cells(taken.begin(), taken.end());
  for (const auto& s : seeds) {
    yaws.push_back(s.source.yaw_idx);
    cells.push_back(s.cell);
  }
  auto tie_key = [](const GridViewpoint& v) {
    return std::make_tuple(v.source.dist_idx, v.source.tilt_idx, v.source.yaw_idx);
  };

  std::vector<GridViewpoint> picks;
  while (static_cast<int>(picks.size()) < extra) {
    const GridViewpoint* best = nullptr;
    int best_score = 0;
    for (const auto& v : feasible) {
      if (std::find(yaws.begin(), yaws.end(), v.source.yaw_idx) != yaws.end()) continue;
      if (std::find(cells.begin(), cells.end(), v.cell) != cells.end()) continue;
      // With no picks yet, prefer yaws near index 0; otherwise maximize the
      // smallest separation to what is already held.
      int score;
      if (yaws.empty()) {
        score = -yaw_separation(v.source.yaw_idx, 0);
      } else {
        score = kYawBins;
        for (int y : yaws) score = std::min(score, yaw_separation(v.source.yaw_idx, y));
      }
      if (!best || score > best_score || (score == best_score && tie_key(v) < tie_key(*best))) {
        best = &v;
        best_score = score;
      }
    }
    if (!best) break;
    picks.push_back(*best);
    yaws.push_back(best->source.yaw_idx);
    cells.push_back(best->cell);
  }
  return picks;
}

}  // namespace dronefilm
