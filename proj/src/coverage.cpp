#include "dronefilm/coverage.hpp"

#include <set>

namespace dronefilm {

int coverage(const Assignment& x, const std::map<int, AgentPose>& agents, const std::map<int, Cell>& actors,
             const FovModel& fov, const GridMap& grid, const VisibilityFn& visible) {
  std::set<int> covered;
  for (const auto& t : x.tuples) {
    auto agent = agents.find(t.agent_id);
    auto actor = actors.find(t.actor_id);
    if (agent == agents.end() || actor == actors.end()) continue;
    if (covers(agent->second.cell, agent->second.facing, actor->second, fov, grid, visible)) {
      covered.insert(t.actor_id);
    }
  }
  return static_cast<int>(covered.size());
}

TrackingAccuracy tracking_accuracy(std::span<const CoverageSample> samples) {
  TrackingAccuracy acc;
  for (const auto& s : samples) {
    if (!s.active) continue;
    ++acc.active_samples;
    if (s.covered) ++acc.covered_samples;
  }
  if (acc.active_samples == 0) {
    acc.empty_run = true;
    return acc;
  }
  acc.percent = 100.0 * static_cast<double>(acc.covered_samples) / static_cast<double>(acc.active_samples);
  return acc;
}

}  // namespace dronefilm
