#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dronefilm/assignment.hpp"
#include "dronefilm/cbs.hpp"
#include "dronefilm/coverage.hpp"
#include "dronefilm/scenario.hpp"
#include "dronefilm/viewpoints.hpp"

namespace dronefilm {

struct SimOptions {
  ViewpointOptions viewpoints;
  CbsOptions cbs;
  // Goals target actor positions this many steps ahead; -1 means the horizon.
  int anticipation_steps = -1;
  // Prefer viewpoints that also see the actor on its way to the target.
  bool steady_window = true;
};

struct AgentRuntime {
  int id = 0;
  Cell cell;
  Heading facing;
  std::vector<Cell> history;  // executed cells, one per elapsed timestep
};

struct SimState {
  int t = 0;
  std::vector<AgentRuntime> agents;  // ordered as in the scenario
  std::vector<ActorState> actors;    // positions at t
  Assignment assignment;
};

// Emission order within a timestep follows the enumerator order.
enum class EventKind { kAssignment = 0, kPlan = 1, kMove = 2, kCoverage = 3, kMetric = 4 };

const char* to_string(EventKind kind);

struct AssignmentEvent {
  Assignment assignment;
  bool adopted_fresh = false;
  bool swapped = false;
  double total_cost = 0.0;
};

struct PlannedPath {
  int agent_id = 0;
  Cell goal;
  std::vector<Cell> cells;
  bool best_effort = false;
};

struct PlanEvent {
  bool ok = false;
  std::string failure;
  bool hold = false;  // agents keep their cells this epoch
  long nodes_expanded = 0;
  long low_level_expansions = 0;
  double sum_of_costs = 0.0;
  std::vector<PlannedPath> paths;
};

struct MoveEvent {
  int agent_id = 0;
  Cell from;
  Cell to;
};

struct AgentView {
  int agent_id = 0;
  Cell cell;
  Heading facing;
  std::optional<int> actor_id;
  bool covered = false;
};

struct CoverageEvent {
  std::vector<ActorState> actors;
  std::vector<AgentView> agents;
  int count = 0;
};

struct RunMetrics {
  double actors_total_cost = 0.0;
  double agents_total_cost = 0.0;
  long nodes_expanded = 0;
  long low_level_expansions = 0;
  int initial_viewpoints = 0;
  double tracking_accuracy = 0.0;
  bool empty_run = true;
  long covered_samples = 0;
  long active_samples = 0;
  int timesteps = 0;
  int planned_epochs = 0;
  int successful_epochs = 0;
  int hold_epochs = 0;
  int swaps = 0;
  double search_objective = 0.0;
  double completion_time_s = 0.0;  // wall clock of the planning loop; not in the trace
};

struct MetricEvent {
  RunMetrics metrics;
  GridMap map;
  FovModel fov;
};

struct TraceEvent {
  int t = 0;
  EventKind kind = EventKind::kAssignment;
  std::variant<AssignmentEvent, PlanEvent, MoveEvent, CoverageEvent, MetricEvent> payload;
};

SimState initial_state(const ScenarioConfig& cfg);

struct EpochResult {
  SimState state;
  std::vector<TraceEvent> events;
  bool planned = false;
  bool cbs_ok = false;
  bool swapped = false;
  int feasible_viewpoints = 0;
  CbsStats stats;
  std::vector<CoverageSample> samples;
};

// One receding-horizon epoch: anticipate actor positions at t + horizon,
// (re)assign, plan with CBS, execute up to execute_steps moves and log.
// On CBS failure every agent holds its cell for the epoch.
EpochResult step_epoch(const SimState& state, const ScenarioConfig& cfg, const SimOptions& options = {});

struct RunResult {
  std::vector<TraceEvent> trace;  // excludes the final metric record
  RunMetrics metrics;
  std::vector<SpaceTimePath> executed;  // per agent, t = 0..run_length-1
  std::vector<CoverageSample> samples;
};

// Validates, then runs epochs to the end of the tracks.
RunResult run(const ScenarioConfig& cfg, const SimOptions& options = {});

}  // namespace dronefilm
