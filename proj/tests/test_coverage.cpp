#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "dronefilm/assignment.hpp"
#include "dronefilm/coverage.hpp"

using namespace dronefilm;

namespace {

Heading east() { return Heading{0}; }

// Agents sit on their viewpoint cells facing the actor.
std::map<int, AgentPose> poses_at_viewpoints(const Assignment& x) {
  std::map<int, AgentPose> out;
  for (const auto& t : x.tuples) out[t.agent_id] = {t.viewpoint.cell, t.viewpoint.facing};
  return out;
}

}  // namespace

TEST(Coverage, LineOfSight) {
  GridMap empty(10, 10);
  EXPECT_TRUE(line_of_sight(empty, {0, 0}, {1, 0}));
  EXPECT_TRUE(line_of_sight(empty, {0, 0}, {0, 0}));
  GridMap g(10, 10, {{0, 2}});
  EXPECT_FALSE(line_of_sight(g, {0, 0}, {0, 4}));
  EXPECT_FALSE(line_of_sight(g, {0, 4}, {0, 0}));
  // Endpoints are never tested.
  EXPECT_TRUE(line_of_sight(g, {0, 2}, {0, 5}));
  EXPECT_TRUE(line_of_sight(g, {0, 0}, {0, 2}));
  // Diagonal through the blocker.
  GridMap d(10, 10, {{2, 2}});
  EXPECT_FALSE(line_of_sight(d, {0, 0}, {4, 4}));
  EXPECT_FALSE(line_of_sight(d, {0, 0}, {4, 3}));  // steps through (2,2) as well
  EXPECT_TRUE(line_of_sight(d, {0, 0}, {4, 1}));
}

TEST(Coverage, CoversSector) {
  GridMap empty(20, 20);
  FovModel fov;
  EXPECT_TRUE(covers({2, 5}, east(), {5, 5}, fov, empty));
  EXPECT_FALSE(covers({5, 5}, east(), {2, 5}, fov, empty));  // directly behind
  EXPECT_TRUE(covers({0, 5}, east(), {9, 5}, fov, empty));   // exactly at range
  EXPECT_FALSE(covers({0, 5}, east(), {10, 5}, fov, empty));  // range + 1
  EXPECT_TRUE(covers({0, 0}, east(), {3, 3}, fov, empty));   // 45 degrees, on the edge
  EXPECT_FALSE(covers({0, 0}, east(), {3, 4}, fov, empty));  // 53 degrees
  EXPECT_FALSE(covers({4, 4}, east(), {4, 4}, fov, empty));  // same cell

  GridMap blocked(20, 20, {{4, 5}});
  EXPECT_FALSE(covers({2, 5}, east(), {6, 5}, fov, blocked));
  // The visibility seam replaces line walking.
  auto never = [](const GridMap&, Cell, Cell) { return false; };
  EXPECT_FALSE(covers({2, 5}, east(), {5, 5}, fov, empty, never));
  auto always = [](const GridMap&, Cell, Cell) { return true; };
  EXPECT_TRUE(covers({2, 5}, east(), {6, 5}, fov, blocked, always));
}

TEST(Coverage, EmptyAssignmentCoversNothing) {
  GridMap empty(10, 10);
  EXPECT_EQ(coverage(Assignment{}, {}, {{0, {3, 3}}}, FovModel{}, empty), 0);
}

TEST(Coverage, ViewpointFixedPointCoversMinNM) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 80; ++trial) {
    GridMap empty(24, 24);
    const int n = 1 + static_cast<int>(rng() % 4);
    const int m = 1 + static_cast<int>(rng() % 6);
    std::vector<Cell> cells;
    for (int y = 0; y < 24; ++y)
      for (int x = 0; x < 24; ++x) cells.push_back({x, y});
    std::shuffle(cells.begin(), cells.end(), rng);
    std::vector<ActorState> actors;
    std::vector<AgentState> agents;
    std::map<int, Cell> actor_cells;
    for (int i = 0; i < n; ++i) {
      actors.push_back({i, cells[i], {}});
      actor_cells[i] = cells[i];
    }
    for (int i = 0; i < m; ++i) agents.push_back({i, cells[n + i]});
    auto x = assign(agents, actors, empty);
    EXPECT_EQ(coverage(x, poses_at_viewpoints(x), actor_cells, FovModel{}, empty), std::min(n, m));
  }
}

TEST(Coverage, BlockedRayDropsOneActor) {
  GridMap empty(20, 20);
  std::vector<ActorState> actors{{0, {4, 10}, {}}, {1, {15, 10}, {}}};
  std::vector<AgentState> agents{{0, {1, 10}}, {1, {18, 10}}};
  auto x = assign(agents, actors, empty);
  const std::map<int, Cell> actor_cells{{0, {4, 10}}, {1, {15, 10}}};
  auto poses = poses_at_viewpoints(x);
  ASSERT_EQ(coverage(x, poses, actor_cells, FovModel{}, empty), 2);

  // Put an obstacle on agent 0's ray; enumerate which actors remain covered.
  const Cell from = poses[0].cell, to = actor_cells.at(x.for_agent(0)->actor_id);
  ASSERT_GE(std::max(std::abs(from.x - to.x), std::abs(from.y - to.y)), 2);
  const Cell mid{(from.x + to.x) / 2, (from.y + to.y) / 2};
  GridMap g(20, 20, {mid});
  int expect = 0;
  for (const auto& t : x.tuples) {
    const auto& p = poses[t.agent_id];
    if (covers(p.cell, p.facing, actor_cells.at(t.actor_id), FovModel{}, g)) ++expect;
  }
  EXPECT_EQ(expect, 1);
  EXPECT_EQ(coverage(x, poses, actor_cells, FovModel{}, g), 1);
}

TEST(Coverage, MonotoneInTuples) {
  GridMap empty(20, 20);
  std::vector<ActorState> actors{{0, {6, 6}, {}}, {1, {14, 14}, {}}};
  std::vector<AgentState> agents{{0, {1, 1}}, {1, {19, 19}}, {2, {1, 19}}};
  auto x = assign(agents, actors, empty);
  const std::map<int, Cell> actor_cells{{0, {6, 6}}, {1, {14, 14}}};
  auto poses = poses_at_viewpoints(x);
  Assignment partial;
  int previous = 0;
  for (const auto& t : x.tuples) {
    partial.tuples.push_back(t);
    const int c = coverage(partial, poses, actor_cells, FovModel{}, empty);
    EXPECT_GE(c, previous);
    EXPECT_LE(c, std::min<int>(2, static_cast<int>(partial.tuples.size())));
    previous = c;
  }
  EXPECT_EQ(previous, 2);
}

TEST(Coverage, TrackingAccuracy) {
  std::vector<CoverageSample> all{{0, 0, true, true}, {0, 1, true, true}, {1, 0, true, true}};
  EXPECT_DOUBLE_EQ(tracking_accuracy(all).percent, 100.0);

  std::vector<CoverageSample> half{{0, 0, true, true}, {0, 1, true, false}, {1, 0, true, false}, {1, 1, true, true}};
  EXPECT_DOUBLE_EQ(tracking_accuracy(half).percent, 50.0);

  // Inactive samples do not count.
  half.push_back({2, 2, false, false});
  EXPECT_DOUBLE_EQ(tracking_accuracy(half).percent, 50.0);

  std::vector<CoverageSample> idle{{0, 0, false, false}, {1, 0, false, false}};
  auto acc = tracking_accuracy(idle);
  EXPECT_TRUE(acc.empty_run);
  EXPECT_EQ(acc.percent, 0.0);
  EXPECT_TRUE(tracking_accuracy({}).empty_run);
}

TEST(Coverage, AccuracyIgnoresOrderWithinTimestep) {
  std::mt19937_64 rng(4);
  std::vector<CoverageSample> samples;
  for (int t = 0; t < 20; ++t)
    for (int a = 0; a < 4; ++a) samples.push_back({t, a, rng() % 5 != 0, rng() % 3 != 0});
  const double base = tracking_accuracy(samples).percent;
  for (int k = 0; k < 10; ++k) {
    for (int t = 0; t < 20; ++t) std::shuffle(samples.begin() + 4 * t, samples.begin() + 4 * t + 4, rng);
    EXPECT_EQ(tracking_accuracy(samples).percent, base);
  }
}
