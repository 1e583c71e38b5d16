#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "dronefilm/grid.hpp"
#include "dronefilm/visibility.hpp"

namespace dronefilm {

inline constexpr int kTiltBins = 6;
inline constexpr int kDistanceBins = 6;
inline constexpr int kLatticeSize = kYawBins * kTiltBins * kDistanceBins;  // 576

// A camera pose on the half-sphere lattice around an actor.
struct SphericalViewpoint {
  int actor_id = 0;
  int yaw_idx = 0;
  int tilt_idx = 0;
  int dist_idx = 0;

  double yaw_radians() const;
  // Elevation above the ground plane, at the centre of the tilt bin.
  double tilt_radians() const;
  // Position in the lattice enumeration (yaw-major, then tilt, then distance).
  int lattice_index() const { return (yaw_idx * kTiltBins + tilt_idx) * kDistanceBins + dist_idx; }

  friend bool operator==(const SphericalViewpoint&, const SphericalViewpoint&) = default;
};

// Distance bins in cells, close-up to long shot.
struct ViewpointOptions {
  std::array<double, kDistanceBins> distance_bins{2.0, 3.0, 4.0, 5.0, 6.0, 8.0};
  // Sight range used when checking an actor's window positions.
  double window_range = 9.0;

  double max_distance() const;
};

// A lattice pose projected onto the grid.
struct GridViewpoint {
  int actor_id = 0;
  Cell cell;
  Heading facing;  // from `cell` toward the actor
  SphericalViewpoint source;

  friend bool operator==(const GridViewpoint&, const GridViewpoint&) = default;
};

std::vector<SphericalViewpoint> build_lattice(int actor_id);

// Projects `vp` along its yaw ray. The nominal ground range is
// round(delta * cos(tilt)) cells; the result snaps to the nearest ray cell
// (alternating outward/inward) that is free, within the largest distance bin
// and in line of sight of the actor. nullopt when no such cell exists.
std::optional<GridViewpoint> to_grid(const SphericalViewpoint& vp, Cell actor_pos, const GridMap& grid,
                                     const ViewpointOptions& options = {});

// All feasible projections of the actor's lattice, in lattice order.
std::vector<GridViewpoint> feasible_viewpoints(int actor_id, Cell actor_pos, const GridMap& grid,
                                               const ViewpointOptions& options = {});

int yaw_separation(int yaw_a, int yaw_b);

// Greedy max-min yaw spread. The first pick is the feasible viewpoint with
// yaw closest to index 0 (ties: smaller dist_idx, tilt_idx, yaw_idx). Picks
// have pairwise distinct yaws and cells.
std::vector<GridViewpoint> select_diverse(int k, std::span<const GridViewpoint> feasible);

// Continues the greedy spread from already-held viewpoints `seeds`, skipping
// cells in `taken`. Returns at most `extra` new picks.
std::vector<GridViewpoint> extend_diverse(std::span<const GridViewpoint> seeds, int extra,
                                          std::span<const GridViewpoint> feasible, std::span<const Cell> taken);

}  // namespace dronefilm
