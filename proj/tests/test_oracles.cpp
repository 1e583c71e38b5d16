#include <gtest/gtest.h>

#include "oracles.hpp"

using dronefilm::Cell;
using dronefilm::CostMatrix;
using dronefilm::GridMap;

TEST(Oracle, BruteForceMatchingSmallCases) {
  CostMatrix a(2, 2);
  a.at(0, 0) = 1;
  a.at(0, 1) = 2;
  a.at(1, 0) = 2;
  a.at(1, 1) = 1;
  EXPECT_EQ(oracle::brute_force_matching(a), 2.0);

  // 1x3: the cheapest single entry.
  CostMatrix b(1, 3);
  b.at(0, 0) = 4;
  b.at(0, 1) = 1;
  b.at(0, 2) = 3;
  EXPECT_EQ(oracle::brute_force_matching(b), 1.0);

  // 3x2 tall: two rows matched, one left out.
  CostMatrix c(3, 2);
  double v[3][2] = {{5, 9}, {1, 8}, {7, 2}};
  for (int r = 0; r < 3; ++r)
    for (int k = 0; k < 2; ++k) c.at(r, k) = v[r][k];
  EXPECT_EQ(oracle::brute_force_matching(c), 3.0);
}

TEST(Oracle, BfsDistance) {
  GridMap g(5, 1);
  EXPECT_EQ(oracle::bfs_distance(g, {0, 0}, {4, 0}), 4);
  GridMap wall(3, 3, {{1, 0}, {1, 1}, {1, 2}});
  EXPECT_EQ(oracle::bfs_distance(wall, {0, 0}, {2, 0}), -1);
}

TEST(Oracle, JointOptimumSingleAgentIsDistance) {
  GridMap g(4, 4, {{1, 1}});
  auto best = oracle::joint_optimum({{0, 0}}, {{2, 2}}, g, 8, {});
  ASSERT_TRUE(best);
  EXPECT_EQ(*best, 4);
}

TEST(Oracle, JointOptimumShortHorizonAddsRemaining) {
  GridMap g(5, 1);
  // Two steps of four: horizon 2 plus 2 left.
  auto best = oracle::joint_optimum({{0, 0}}, {{4, 0}}, g, 2, {});
  ASSERT_TRUE(best);
  EXPECT_EQ(*best, 4);
}

TEST(Oracle, JointOptimumCorridorSwapNeedsSideCell) {
  // 3x2: agents swap ends of the bottom row, using the top row to pass.
  GridMap g(3, 2);
  auto best = oracle::joint_optimum({{0, 0}, {2, 0}}, {{2, 0}, {0, 0}}, g, 8, {});
  ASSERT_TRUE(best);
  // One detours through the top row (4 steps), the other goes straight (2).
  EXPECT_EQ(*best, 6);

  // Single-row corridor: they never pass. Best is one agent stepping into the
  // middle (4 + 1) while the other stays put (4 + 2).
  GridMap row(3, 1);
  auto stuck = oracle::joint_optimum({{0, 0}, {2, 0}}, {{2, 0}, {0, 0}}, row, 4, {});
  ASSERT_TRUE(stuck);
  EXPECT_EQ(*stuck, 11);
}

TEST(Oracle, JointOptimumMoverOnGoalDelaysParking) {
  GridMap g(3, 1);
  oracle::MoverTable movers(4);
  movers[3] = {{2, 0}};
  // Agent could arrive at t=2 but the actor steps on the goal at t=3.
  auto best = oracle::joint_optimum({{0, 0}}, {{2, 0}}, g, 4, movers);
  ASSERT_TRUE(best);
  EXPECT_EQ(*best, 4);
}

TEST(Oracle, PathObjective) {
  GridMap g(4, 1);
  std::vector<Cell> p{{0, 0}, {1, 0}, {2, 0}, {2, 0}};
  EXPECT_EQ(oracle::path_objective(p, {2, 0}, g, 3), 2);
  EXPECT_EQ(oracle::path_objective(p, {3, 0}, g, 3), 4);
  std::vector<Cell> leave{{2, 0}, {1, 0}, {2, 0}};
  EXPECT_EQ(oracle::path_objective(leave, {2, 0}, g, 2), 2);
}

TEST(Oracle, ConflictScanner) {
  EXPECT_EQ(oracle::count_conflicts({{{0, 0}, {1, 0}}, {{2, 0}, {1, 0}}}), 1);
  EXPECT_EQ(oracle::count_conflicts({{{0, 0}, {1, 0}}, {{1, 0}, {0, 0}}}), 1);
  EXPECT_EQ(oracle::count_conflicts({{{0, 0}, {0, 1}}, {{1, 0}, {1, 1}}}), 0);
  // Shorter path holds its last cell.
  EXPECT_EQ(oracle::count_conflicts({{{0, 0}}, {{2, 0}, {1, 0}, {0, 0}}}), 1);
}
