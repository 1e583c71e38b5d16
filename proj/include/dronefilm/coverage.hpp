#pragma once

#include <map>
#include <span>

#include "dronefilm/assignment.hpp"
#include "dronefilm/visibility.hpp"

namespace dronefilm {

struct AgentPose {
  Cell cell;
  Heading facing;
};

// Number of distinct actors that at least one of their assigned agents
// covers. Tuples whose agent or actor is not listed are ignored.
int coverage(const Assignment& x, const std::map<int, AgentPose>& agents, const std::map<int, Cell>& actors,
             const FovModel& fov, const GridMap& grid, const VisibilityFn& visible = line_of_sight);

// One agent at one timestep.
struct CoverageSample {
  int t = 0;
  int agent_id = 0;
  bool active = false;   // agent had an assignment
  bool covered = false;  // ... and covered its assigned actor
};

struct TrackingAccuracy {
  double percent = 0.0;
  long active_samples = 0;
  long covered_samples = 0;
  bool empty_run = false;  // no active samples; percent is 0 by definition
};

TrackingAccuracy tracking_accuracy(std::span<const CoverageSample> samples);

}  // namespace dronefilm
