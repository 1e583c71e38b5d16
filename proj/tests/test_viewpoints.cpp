#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "dronefilm/viewpoints.hpp"

using namespace dronefilm;

namespace {

int min_separation(const std::vector<GridViewpoint>& picks) {
  int best = kYawBins;
  for (std::size_t i = 0; i < picks.size(); ++i) {
    for (std::size_t j = i + 1; j < picks.size(); ++j) {
      best = std::min(best, yaw_separation(picks[i].source.yaw_idx, picks[j].source.yaw_idx));
    }
  }
  return best;
}

GridMap random_map(std::mt19937_64& rng, int w, int h, int n) {
  std::vector<Cell> obstacles;
  for (int i = 0; i < n; ++i) {
    obstacles.push_back({static_cast<int>(rng() % w), static_cast<int>(rng() % h)});
  }
  return GridMap(w, h, obstacles);
}

}  // namespace

TEST(Viewpoints, LatticeShape) {
  auto lattice = build_lattice(3);
  ASSERT_EQ(lattice.size(), 576u);
  EXPECT_EQ(576 / (kYawBins * kTiltBins), kDistanceBins);
  EXPECT_EQ(lattice.front(), (SphericalViewpoint{3, 0, 0, 0}));
  EXPECT_EQ(lattice[1], (SphericalViewpoint{3, 0, 0, 1}));
  EXPECT_EQ(lattice[6], (SphericalViewpoint{3, 0, 1, 0}));
  EXPECT_EQ(lattice[36], (SphericalViewpoint{3, 1, 0, 0}));
  for (std::size_t i = 0; i < lattice.size(); ++i) EXPECT_EQ(lattice[i].lattice_index(), static_cast<int>(i));
  std::set<std::tuple<int, int, int>> distinct;
  for (const auto& v : lattice) distinct.insert({v.yaw_idx, v.tilt_idx, v.dist_idx});
  EXPECT_EQ(distinct.size(), 576u);
}

TEST(Viewpoints, AnglesFollowBinCentres) {
  EXPECT_DOUBLE_EQ((SphericalViewpoint{0, 4, 0, 0}).yaw_radians(), std::acos(-1.0) / 2);
  EXPECT_NEAR((SphericalViewpoint{0, 0, 0, 0}).tilt_radians(), 7.5 * std::acos(-1.0) / 180, 1e-12);
  EXPECT_NEAR((SphericalViewpoint{0, 0, 5, 0}).tilt_radians(), 82.5 * std::acos(-1.0) / 180, 1e-12);
}

TEST(Viewpoints, ProjectNorthAtThreeCells) {
  GridMap empty(20, 20);
  auto g = to_grid({0, 4, 0, 1}, {5, 5}, empty);
  ASSERT_TRUE(g);
  EXPECT_EQ(g->cell, (Cell{5, 8}));
  EXPECT_EQ(g->facing.yaw, 12);  // south
}

TEST(Viewpoints, CornerFacingOutIsInfeasible) {
  GridMap empty(20, 20);
  EXPECT_FALSE(to_grid({0, 8, 0, 3}, {0, 0}, empty));    // west
  EXPECT_FALSE(to_grid({0, 10, 2, 5}, {0, 0}, empty));   // south-west
  EXPECT_TRUE(to_grid({0, 0, 0, 3}, {0, 0}, empty));     // east stays inside
}

TEST(Viewpoints, TopTiltGroundRange) {
  // cos(82.5 deg) = 0.1305: 2 and 3 cells round to 0, 4 cells and up round to 1.
  GridMap empty(20, 20);
  EXPECT_FALSE(to_grid({0, 0, 5, 0}, {5, 5}, empty));
  EXPECT_FALSE(to_grid({0, 0, 5, 1}, {5, 5}, empty));
  for (int d = 2; d < kDistanceBins; ++d) {
    auto g = to_grid({0, 0, 5, d}, {5, 5}, empty);
    ASSERT_TRUE(g);
    EXPECT_EQ(g->cell, (Cell{6, 5}));
  }
}

TEST(Viewpoints, SnapsAlongRayPastObstacle) {
  // East ray, nominal range 3: (8,5) blocked, so try 4 then 2. (9,5) is
  // behind the blocker, so line of sight fails and the snap lands inward.
  GridMap g(20, 20, {{8, 5}});
  auto v = to_grid({0, 0, 0, 1}, {5, 5}, g);
  ASSERT_TRUE(v);
  EXPECT_EQ(v->cell, (Cell{7, 5}));

  // A blocker at range 2 only: range 3 is blocked from view, 4 and 2 too.
  GridMap wall(20, 20, {{6, 5}});
  EXPECT_FALSE(to_grid({0, 0, 0, 1}, {5, 5}, wall));
}

TEST(Viewpoints, FeasibleViewpointsAreUsable) {
  const FovModel fov;
  ViewpointOptions opts;
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    GridMap g = random_map(rng, 12, 10, trial % 25);
    Cell actor{static_cast<int>(rng() % 12), static_cast<int>(rng() % 10)};
    if (g.blocked(actor)) continue;
    auto feasible = feasible_viewpoints(2, actor, g);
    for (const auto& v : feasible) {
      EXPECT_TRUE(g.free(v.cell));
      EXPECT_NE(v.cell, actor);
      EXPECT_LE(std::hypot(v.cell.x - actor.x, v.cell.y - actor.y), opts.max_distance() + 1e-9);
      EXPECT_EQ(v.facing, Heading::toward(v.cell, actor));
      EXPECT_TRUE(covers(v.cell, v.facing, actor, fov, g));
      EXPECT_EQ(v.actor_id, 2);
    }
    // Lattice order is preserved.
    for (std::size_t i = 1; i < feasible.size(); ++i) {
      EXPECT_LT(feasible[i - 1].source.lattice_index(), feasible[i].source.lattice_index());
    }
  }
}

TEST(Viewpoints, DiverseSelectionSpreadsYaw) {
  GridMap empty(30, 30);
  auto feasible = feasible_viewpoints(0, {15, 15}, empty);
  ASSERT_EQ(feasible.size(), static_cast<std::size_t>(kYawBins * (kTiltBins * kDistanceBins - 2)));

  auto one = select_diverse(1, feasible);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].source, (SphericalViewpoint{0, 0, 0, 0}));

  auto two = select_diverse(2, feasible);
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(min_separation(two), 8);

  auto four = select_diverse(4, feasible);
  ASSERT_EQ(four.size(), 4u);
  EXPECT_EQ(min_separation(four), 4);
}

TEST(Viewpoints, DiverseSelectionProperties) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    GridMap g = random_map(rng, 16, 16, 30);
    Cell actor{8, 8};
    if (g.blocked(actor)) continue;
    auto feasible = feasible_viewpoints(0, actor, g);
    if (feasible.empty()) continue;
    int previous = kYawBins;
    for (int k = 1; k <= 20; ++k) {
      auto picks = select_diverse(k, feasible);
      std::set<Cell> cells;
      std::set<int> yaws;
      for (const auto& p : picks) {
        cells.insert(p.cell);
        yaws.insert(p.source.yaw_idx);
      }
      EXPECT_EQ(cells.size(), picks.size());
      EXPECT_EQ(yaws.size(), picks.size());
      EXPECT_LE(static_cast<int>(picks.size()), k);
      const int sep = min_separation(picks);
      EXPECT_LE(sep, previous);
      previous = sep;
    }
  }
}

TEST(Viewpoints, YawSeparationWraps) {
  EXPECT_EQ(yaw_separation(0, 8), 8);
  EXPECT_EQ(yaw_separation(1, 15), 2);
  EXPECT_EQ(yaw_separation(3, 3), 0);
}
