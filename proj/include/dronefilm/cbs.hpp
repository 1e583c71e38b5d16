#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dronefilm/grid.hpp"

namespace dronefilm {

// One cell per timestep, t = 0..T.
struct SpaceTimePath {
  int agent_id = 0;
  std::vector<Cell> cells;

  // Position at t, holding the final cell past the end.
  Cell at(int t) const { return cells[t < static_cast<int>(cells.size()) ? t : cells.size() - 1]; }

  friend bool operator==(const SpaceTimePath&, const SpaceTimePath&) = default;
};

// Sum of Euclidean distances between consecutive cells. Waits add nothing.
double path_cost(const SpaceTimePath& path);

enum class ConstraintKind { kVertex, kEdge };

// Vertex: agent may not be at `to` at time t. Edge: agent may not move
// from `from` to `to` arriving at time t (t >= 1).
struct Constraint {
  int agent_id = 0;
  ConstraintKind kind = ConstraintKind::kVertex;
  Cell from;
  Cell to;
  int t = 0;

  static Constraint vertex(int agent, Cell cell, int t) { return {agent, ConstraintKind::kVertex, cell, cell, t}; }
  static Constraint edge(int agent, Cell from, Cell to, int t) { return {agent, ConstraintKind::kEdge, from, to, t}; }

  friend bool operator==(const Constraint&, const Constraint&) = default;
};

// Vertex conflict: both agents at `to` at time t (from == to).
// Edge conflict: agent_a moves from->to while agent_b moves to->from,
// between t-1 and t.
struct Conflict {
  ConstraintKind kind = ConstraintKind::kVertex;
  int agent_a = 0;  // index into the path list
  int agent_b = 0;
  Cell from;
  Cell to;
  int t = 0;

  friend bool operator==(const Conflict&, const Conflict&) = default;
};

// Cells taken by non-planning movers (actors) at each timestep. Agents must
// not enter them; t = 0 is never checked.
class MovingObstacles {
 public:
  void add(int t, Cell c);
  bool occupied(Cell c, int t) const;
  int horizon() const { return static_cast<int>(by_time_.size()) - 1; }

 private:
  std::vector<std::vector<Cell>> by_time_;
};

struct LowLevelOutcome {
  bool found = false;
  SpaceTimePath path;      // padded to horizon + 1 cells
  long objective = 0;      // arrival time, or horizon + remaining distance
  bool best_effort = false;
  long expansions = 0;
};

// Space-time A* (Manhattan heuristic, moves + wait) bounded to `horizon`
// steps. The objective is the time after which the agent stays at the goal;
// waiting at the goal after that is free. If the goal cannot be reached and
// held within the horizon, the result is the reachable time-horizon cell with
// the smallest remaining static shortest-path distance (Manhattan plus a
// large offset when the goal is walled off), and the objective is
// horizon + that distance. Ties prefer fewer waits, then smaller (x, y).
LowLevelOutcome low_level_search(int agent_id, Cell start, Cell goal, std::span<const Constraint> constraints,
                                 const GridMap& grid, int horizon, const MovingObstacles& movers = {});

// Earliest vertex or swap conflict; at equal times the smaller agent-id pair
// wins. Paths shorter than the others hold their last cell.
std::optional<Conflict> find_first_conflict(std::span<const SpaceTimePath> paths);

struct ConflictTreeNode {
  std::vector<Constraint> constraints;
  std::vector<SpaceTimePath> paths;
  std::vector<long> objectives;
  std::vector<bool> best_effort;
  double cost = 0.0;
  long id = 0;
};

struct CbsStats {
  long high_level_nodes_expanded = 0;
  long high_level_nodes_generated = 0;
  long low_level_expansions = 0;
  double wall_time_s = 0.0;
};

struct CbsOptions {
  long max_high_level_expansions = 100000;
  // Test hook: called for every generated child.
  std::function<void(const ConflictTreeNode& parent, const ConflictTreeNode& child)> on_child;
};

enum class CbsFailure { kNone, kUnroutable, kBudgetExhausted, kNoSolution };

struct CbsResult {
  CbsFailure failure = CbsFailure::kNone;
  std::vector<SpaceTimePath> paths;  // agent_id = index into starts
  std::vector<long> objectives;
  std::vector<bool> best_effort;
  double sum_of_costs = 0.0;
  CbsStats stats;

  bool ok() const { return failure == CbsFailure::kNone; }
};

const char* to_string(CbsFailure failure);

// Optimal conflict-based search under the per-agent objective above.
// Best-first on node cost, then fewer constraints, then insertion order.
CbsResult cbs_solve(std::span<const Cell> starts, std::span<const Cell> goals, const GridMap& grid, int horizon,
                    const MovingObstacles& movers = {}, const CbsOptions& options = {});

}  // namespace dronefilm
