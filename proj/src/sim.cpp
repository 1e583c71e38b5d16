#include "dronefilm/sim.hpp"

#include <algorithm>
#include <chrono>

namespace dronefilm {

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::kAssignment: return "assignment";
    case EventKind::kPlan: return "plan";
    case EventKind::kMove: return "move";
    case EventKind::kCoverage: return "coverage";
    case EventKind::kMetric: return "metric";
  }
  return "unknown";
}

SimState initial_state(const ScenarioConfig& cfg) {
  SimState state;
  for (const auto& a : cfg.agents) state.agents.push_back({a.id, a.cell, Heading{}, {a.cell}});
  if (cfg.run_length() > 0) {
    for (const auto& track : cfg.actors) state.actors.push_back({track.id, actor_position_at(track, 0), {}});
  }
  return state;
}

namespace {

std::vector<ActorState> actors_at(const ScenarioConfig& cfg, int t) {
  std::vector<ActorState> out;
  for (const auto& track : cfg.actors) out.push_back({track.id, actor_position_at(track, t), {}});
  return out;
}

std::vector<AgentState> agent_states(const SimState& state) {
  std::vector<AgentState> out;
  for (const auto& a : state.agents) out.push_back({a.id, a.cell});
  return out;
}

}  // namespace

EpochResult step_epoch(const SimState& state, const ScenarioConfig& cfg, const SimOptions& options) {
  EpochResult out;
  out.state = state;
  SimState& next = out.state;
  const int t = state.t;
  const int length = cfg.run_length();
  const int horizon = cfg.horizon_steps;
  const int steps = std::clamp(length - 1 - t, 0, cfg.execute_steps);

  // Goals anticipate where actors will be when the plan window closes.
  const int lookahead = options.anticipation_steps < 0 ? horizon : options.anticipation_steps;
  auto anticipated = actors_at(cfg, t + lookahead);
  if (options.steady_window) {
    for (std::size_t i = 0; i < anticipated.size(); ++i) {
      for (int k = 1; k < lookahead; ++k) anticipated[i].window.push_back(actor_position_at(cfg.actors[i], t + k));
    }
  }
  ViewpointOptions vopts = options.viewpoints;
  vopts.window_range = cfg.fov.range_cells;
  std::vector<Cell> actor_cells;
  for (const auto& a : anticipated) actor_cells.push_back(a.cell);
  const GridMap projection = cfg.map.with_blocked(actor_cells);

  const auto agents = agent_states(state);
  const Assignment fresh = assign(agents, anticipated, projection, vopts);
  ReassignResult chosen =
      reassign(state.assignment, fresh, agents, anticipated, projection, cfg.hysteresis, vopts);
  next.assignment = chosen.assignment;
  out.swapped = chosen.swapped;
  out.feasible_viewpoints = fresh.feasible_viewpoints;
  out.events.push_back({t, EventKind::kAssignment,
                        AssignmentEvent{chosen.assignment, chosen.adopted_fresh, chosen.swapped,
                                        total_cost(chosen.assignment, agents)}});

  std::vector<std::vector<Cell>> paths;
  for (const auto& a : state.agents) paths.push_back(std::vector<Cell>(steps + 1, a.cell));
  if (steps > 0) {
    std::vector<Cell> starts, goals;
    for (const auto& a : state.agents) {
      const auto* tuple = next.assignment.for_agent(a.id);
      starts.push_back(a.cell);
      goals.push_back(tuple ? tuple->viewpoint.cell : a.cell);
    }
    MovingObstacles movers;
    for (int k = 1; k <= horizon; ++k) {
      for (const auto& track : cfg.actors) movers.add(k, actor_position_at(track, t + k));
    }
    const CbsResult plan = cbs_solve(starts, goals, cfg.map, horizon, movers, options.cbs);
    out.planned = true;
    out.cbs_ok = plan.ok();
    out.stats = plan.stats;

    PlanEvent event;
    event.ok = plan.ok();
    event.failure = to_string(plan.failure);
    event.hold = !plan.ok();
    event.nodes_expanded = plan.stats.high_level_nodes_expanded;
    event.low_level_expansions = plan.stats.low_level_expansions;
    event.sum_of_costs = plan.sum_of_costs;
    for (std::size_t i = 0; i < state.agents.size(); ++i) {
      PlannedPath p{state.agents[i].id, goals[i], {}, false};
      if (plan.ok()) {
        p.cells = plan.paths[i].cells;
        p.best_effort = plan.best_effort[i];
        for (int k = 0; k <= steps; ++k) paths[i][k] = plan.paths[i].at(k);
      } else {
        p.cells = paths[i];
      }
      event.paths.push_back(std::move(p));
    }
    out.events.push_back({t, EventKind::kPlan, std::move(event)});
  }

  const int covered_steps = std::max(steps, 1);
  for (int k = 0; k < covered_steps && t + k < length; ++k) {
    const int now = t + k;
    const auto actors_now = actors_at(cfg, now);
    for (std::size_t i = 0; i < next.agents.size(); ++i) {
      next.agents[i].cell = paths[i][k];
    }
    if (k < steps) {
      for (std::size_t i = 0; i < next.agents.size(); ++i) {
        out.events.push_back({now, EventKind::kMove, MoveEvent{next.agents[i].id, paths[i][k], paths[i][k + 1]}});
      }
    }
    CoverageEvent cov;
    cov.actors = actors_now;
    std::vector<int> covered_actors;
    for (auto& agent : next.agents) {
      AgentView view{agent.id, agent.cell, agent.facing, std::nullopt, false};
      if (const auto* tuple = next.assignment.for_agent(agent.id)) {
        auto it = std::find_if(actors_now.begin(), actors_now.end(),
                               [&](const ActorState& a) { return a.id == tuple->actor_id; });
        if (it->cell != agent.cell) agent.facing = Heading::toward(agent.cell, it->cell);
        view.facing = agent.facing;
        view.actor_id = tuple->actor_id;
        view.covered = covers(agent.cell, agent.facing, it->cell, cfg.fov, cfg.map);
        if (view.covered) covered_actors.push_back(tuple->actor_id);
      }
      out.samples.push_back({now, agent.id, view.actor_id.has_value(), view.covered});
      cov.agents.push_back(view);
    }
    std::sort(covered_actors.begin(), covered_actors.end());
    cov.count = static_cast<int>(std::unique(covered_actors.begin(), covered_actors.end()) - covered_actors.begin());
    out.events.push_back({now, EventKind::kCoverage, std::move(cov)});
  }

  for (std::size_t i = 0; i < next.agents.size(); ++i) {
    next.agents[i].cell = paths[i][steps];
    for (int k = 1; k <= steps; ++k) next.agents[i].history.push_back(paths[i][k]);
  }
  next.t = t + covered_steps;
  if (next.t < length) next.actors = actors_at(cfg, next.t);
  return out;
}

RunResult run(const ScenarioConfig& cfg, const SimOptions& options) {
  validate(cfg);
  RunResult result;
  RunMetrics& m = result.metrics;
  const int length = cfg.run_length();
  m.timesteps = length;
  for (const auto& track : cfg.actors) m.actors_total_cost += path_cost({track.id, track.positions});

  const auto began = std::chrono::steady_clock::now();
  SimState state = initial_state(cfg);
  bool first = true;
  while (state.t < length) {
    EpochResult epoch = step_epoch(state, cfg, options);
    if (first) m.initial_viewpoints = epoch.feasible_viewpoints;
    first = false;
    if (epoch.planned) {
      ++m.planned_epochs;
      m.nodes_expanded += epoch.stats.high_level_nodes_expanded;
      m.low_level_expansions += epoch.stats.low_level_expansions;
      if (epoch.cbs_ok) {
        ++m.successful_epochs;
      } else {
        ++m.hold_epochs;
      }
    }
    if (epoch.swapped) ++m.swaps;
    for (const auto& e : epoch.events) {
      if (const auto* plan = std::get_if<PlanEvent>(&e.payload)) m.search_objective += plan->sum_of_costs;
    }
    result.samples.insert(result.samples.end(), epoch.samples.begin(), epoch.samples.end());
    std::move(epoch.events.begin(), epoch.events.end(), std::back_inserter(result.trace));
    state = std::move(epoch.state);
  }
  m.completion_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - began).count();

  for (const auto& agent : state.agents) {
    SpaceTimePath executed{agent.id, agent.history};
    m.agents_total_cost += path_cost(executed);
    result.executed.push_back(std::move(executed));
  }
  const TrackingAccuracy acc = tracking_accuracy(result.samples);
  m.tracking_accuracy = acc.percent;
  m.empty_run = acc.empty_run;
  m.active_samples = acc.active_samples;
  m.covered_samples = acc.covered_samples;
  return result;
}

}  // namespace dronefilm
