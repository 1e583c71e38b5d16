#pragma once

#include <limits>
#include <span>
#include <vector>

#include "dronefilm/grid.hpp"
#include "dronefilm/viewpoints.hpp"

namespace dronefilm {

struct AgentState {
  int id = 0;
  Cell cell;
};

struct ActorState {
  int id = 0;
  Cell cell;
  // Further positions a viewpoint should keep in range and sight of. When
  // some feasible viewpoints do, only those are offered; may be empty.
  std::vector<Cell> window;
};

double euclidean(Cell a, Cell b);

// Dense rows x cols cost table.
class CostMatrix {
 public:
  CostMatrix(int rows, int cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  double at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

 private:
  int rows_;
  int cols_;
  std::vector<double> data_;
};

struct Matching {
  std::vector<int> col_of_row;  // -1 when the row is unmatched
  double total = 0.0;           // summed in row order
};

// Optimal rectangular matching of size min(rows, cols). Among equal-cost
// optima the assignment vector (col of row 0, row 1, ...) is lexicographically
// smallest, with "unmatched" ordered after every column.
Matching solve_min_cost(const CostMatrix& costs);

struct AssignmentTuple {
  int actor_id = 0;
  int agent_id = 0;
  GridViewpoint viewpoint;

  friend bool operator==(const AssignmentTuple&, const AssignmentTuple&) = default;
};

struct Assignment {
  std::vector<AssignmentTuple> tuples;  // sorted by agent id
  std::vector<int> uncoverable_actors;  // no feasible viewpoint
  std::vector<int> unassigned_agents;
  int feasible_viewpoints = 0;          // projected candidates over all actors

  const AssignmentTuple* for_agent(int agent_id) const;
  int covered_actor_count() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

// Sum of Euclidean distances from each assigned agent to its viewpoint cell.
double total_cost(const Assignment& x, std::span<const AgentState> agents);

// Builds X in three phases: agents to actors by min-cost matching over the
// nearest feasible viewpoint, cheapest free viewpoint per matched agent, then
// surplus agents matched to diverse extra slots handed out round-robin.
Assignment assign(std::span<const AgentState> agents, std::span<const ActorState> actors, const GridMap& grid,
                  const ViewpointOptions& options = {});

// Same spherical indices, new actor positions. nullopt if any tuple becomes
// infeasible or two tuples land on one cell.
std::optional<Assignment> reproject(const Assignment& current, std::span<const ActorState> actors,
                                    const GridMap& grid, const ViewpointOptions& options = {});

struct ReassignResult {
  Assignment assignment;
  bool adopted_fresh = false;
  bool swapped = false;  // some agent now tracks a different actor
};

// Hysteresis gate: the fresh proposal replaces the re-projected current one
// iff it covers more actors, or current cost - fresh cost > hysteresis.
ReassignResult reassign(const Assignment& current, const Assignment& fresh, std::span<const AgentState> agents,
                        std::span<const ActorState> actors, const GridMap& grid, double hysteresis,
                        const ViewpointOptions& options = {});

}  // namespace dronefilm
