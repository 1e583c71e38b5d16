#include "dronefilm/cbs.hpp"

#include <algorithm>
#include <chrono>
#include <climits>
#include <cmath>
#include <queue>
#include <tuple>
#include <unordered_set>

namespace dronefilm {

double path_cost(const SpaceTimePath& path) {
  double total = 0.0;
  for (std::size_t i = 1; i < path.cells.size(); ++i) {
    const double dx = path.cells[i].x - path.cells[i - 1].x;
    const double dy = path.cells[i].y - path.cells[i - 1].y;
    total += std::sqrt(dx * dx + dy * dy);
  }
  return total;
}

void MovingObstacles::add(int t, Cell c) {
  if (t < 0) return;
  if (static_cast<int>(by_time_.size()) <= t) by_time_.resize(t + 1);
  by_time_[t].push_back(c);
}

bool MovingObstacles::occupied(Cell c, int t) const {
  if (t <= 0 || t >= static_cast<int>(by_time_.size())) return false;
  const auto& cells = by_time_[t];
  return std::find(cells.begin(), cells.end(), c) != cells.end();
}

const char* to_string(CbsFailure failure) {
  switch (failure) {
    case CbsFailure::kNone: return "none";
    case CbsFailure::kUnroutable: return "unroutable";
    case CbsFailure::kBudgetExhausted: return "budget_exhausted";
    case CbsFailure::kNoSolution: return "no_solution";
  }
  return "unknown";
}

namespace {

// Low-level search with a precomputed static distance field for the goal.
LowLevelOutcome search(int agent_id, Cell start, Cell goal, std::span<const Constraint> constraints,
                       const GridMap& grid, int horizon, const MovingObstacles& movers,
                       const std::vector<int>& goal_dist) {
  LowLevelOutcome out;
  out.path.agent_id = agent_id;
  if (grid.blocked(start) || horizon < 0) return out;

  const long n = grid.cell_count();
  auto key = [n](int idx, int t) { return static_cast<long>(t) * n + idx; };
  std::unordered_set<long> vertex_blocked;
  std::unordered_set<long> edge_blocked;  // (t, from, to)
  int last_goal_block = 0;
  for (const auto& c : constraints) {
    if (c.agent_id != agent_id || c.t < 1 || c.t > horizon) continue;
    if (c.kind == ConstraintKind::kVertex) {
      if (!grid.in_bounds(c.to)) continue;
      vertex_blocked.insert(key(grid.index(c.to), c.t));
      if (c.to == goal) last_goal_block = std::max(last_goal_block, c.t);
    } else if (grid.in_bounds(c.from) && grid.in_bounds(c.to)) {
      edge_blocked.insert((static_cast<long>(c.t) * n + grid.index(c.from)) * n + grid.index(c.to));
    }
  }
  for (int t = 1; t <= horizon; ++t) {
    if (movers.occupied(goal, t)) last_goal_block = std::max(last_goal_block, t);
  }
  auto vertex_ok = [&](Cell c, int t) {
    return !movers.occupied(c, t) && !vertex_blocked.count(key(grid.index(c), t));
  };

  struct Node {
    Cell cell;
    int t;
    int waits;
    int parent;
  };
  std::vector<Node> nodes;
  auto order = [&](int a, int b) {
    const Node& x = nodes[a];
    const Node& y = nodes[b];
    const auto kx = std::make_tuple(x.t + manhattan(x.cell, goal), x.waits, x.cell.x, x.cell.y, x.t);
    const auto ky = std::make_tuple(y.t + manhattan(y.cell, goal), y.waits, y.cell.x, y.cell.y, y.t);
    return kx > ky;
  };
  std::priority_queue<int, std::vector<int>, decltype(order)> open(order);
  std::vector<int> best_waits(static_cast<std::size_t>(horizon + 1) * n, INT_MAX);
  std::vector<char> expanded(best_waits.size(), 0);

  nodes.push_back({start, 0, 0, -1});
  best_waits[key(grid.index(start), 0)] = 0;
  open.push(0);

  auto remaining = [&](Cell c) -> long {
    const int d = goal_dist.empty() ? -1 : goal_dist[grid.index(c)];
    return d >= 0 ? d : n + manhattan(c, goal);
  };

  int goal_node = -1;
  int terminal = -1;
  while (!open.empty()) {
    const int cur = open.top();
    open.pop();
    const Node node = nodes[cur];
    const long state = key(grid.index(node.cell), node.t);
    if (expanded[state]) continue;
    expanded[state] = 1;
    ++out.expansions;

    if (node.cell == goal && node.t >= last_goal_block) {
      goal_node = cur;
      break;
    }
    if (node.t == horizon) {
      if (terminal < 0) {
        terminal = cur;
      } else {
        const Node& best = nodes[terminal];
        if (std::make_tuple(remaining(node.cell), node.waits, node.cell.x, node.cell.y) <
            std::make_tuple(remaining(best.cell), best.waits, best.cell.x, best.cell.y)) {
          terminal = cur;
        }
      }
      continue;
    }
    static constexpr Cell kSteps[5] = {{0, 0}, {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    for (Cell step : kSteps) {
      const Cell next = node.cell + step;
      const int t = node.t + 1;
      if (grid.blocked(next) || !vertex_ok(next, t)) continue;
      if (next != node.cell &&
          edge_blocked.count((static_cast<long>(t) * n + grid.index(node.cell)) * n + grid.index(next))) {
        continue;
      }
      const long nstate = key(grid.index(next), t);
      const int waits = node.waits + (next == node.cell ? 1 : 0);
      if (expanded[nstate] || waits >= best_waits[nstate]) continue;
      best_waits[nstate] = waits;
      nodes.push_back({next, t, waits, cur});
      open.push(static_cast<int>(nodes.size()) - 1);
    }
  }

  const int last = goal_node >= 0 ? goal_node : terminal;
  if (last < 0) return out;
  std::vector<Cell> cells;
  for (int i = last; i >= 0; i = nodes[i].parent) cells.push_back(nodes[i].cell);
  std::reverse(cells.begin(), cells.end());
  cells.resize(horizon + 1, cells.back());
  out.found = true;
  out.path.cells = std::move(cells);
  if (goal_node >= 0) {
    out.objective = nodes[goal_node].t;
  } else {
    out.best_effort = true;
    out.objective = horizon + remaining(nodes[terminal].cell);
  }
  return out;
}

}  // namespace

LowLevelOutcome low_level_search(int agent_id, Cell start, Cell goal, std::span<const Constraint> constraints,
                                 const GridMap& grid, int horizon, const MovingObstacles& movers) {
  return search(agent_id, start, goal, constraints, grid, horizon, movers, distance_field(grid, goal));
}

std::optional<Conflict> find_first_conflict(std::span<const SpaceTimePath> paths) {
  std::vector<int> order(paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return paths[a].agent_id < paths[b].agent_id; });
  int length = 0;
  for (const auto& p : paths) length = std::max(length, static_cast<int>(p.cells.size()));
  for (int t = 0; t < length; ++t) {
    for (std::size_t ii = 0; ii < order.size(); ++ii) {
      for (std::size_t jj = ii + 1; jj < order.size(); ++jj) {
        const int i = order[ii];
        const int j = order[jj];
        if (paths[i].cells.empty() || paths[j].cells.empty()) continue;
        const Cell ci = paths[i].at(t);
        const Cell cj = paths[j].at(t);
        if (ci == cj) return Conflict{ConstraintKind::kVertex, i, j, ci, ci, t};
        if (t == 0) continue;
        const Cell pi = paths[i].at(t - 1);
        const Cell pj = paths[j].at(t - 1);
        if (pi != ci && pi == cj && pj == ci) return Conflict{ConstraintKind::kEdge, i, j, pi, ci, t};
      }
    }
  }
  return std::nullopt;
}

CbsResult cbs_solve(std::span<const Cell> starts, std::span<const Cell> goals, const GridMap& grid, int horizon,
                    const MovingObstacles& movers, const CbsOptions& options) {
  const auto began = std::chrono::steady_clock::now();
  CbsResult result;
  auto finish = [&](CbsFailure failure) {
    result.failure = failure;
    result.stats.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - began).count();
    return result;
  };
  const int k = static_cast<int>(starts.size());
  std::vector<std::vector<int>> fields;
  fields.reserve(k);
  for (int i = 0; i < k; ++i) fields.push_back(distance_field(grid, goals[i]));

  auto sum = [](const std::vector<long>& objectives) {
    double s = 0.0;
    for (long o : objectives) s += static_cast<double>(o);
    return s;
  };

  std::vector<ConflictTreeNode> pool;
  ConflictTreeNode root;
  for (int i = 0; i < k; ++i) {
    auto low = search(i, starts[i], goals[i], {}, grid, horizon, movers, fields[i]);
    result.stats.low_level_expansions += low.expansions;
    if (!low.found) return finish(CbsFailure::kUnroutable);
    root.paths.push_back(std::move(low.path));
    root.objectives.push_back(low.objective);
    root.best_effort.push_back(low.best_effort);
  }
  root.cost = sum(root.objectives);
  pool.push_back(std::move(root));
  result.stats.high_level_nodes_generated = 1;

  auto worse = [&](long a, long b) {
    const auto& x = pool[a];
    const auto& y = pool[b];
    return std::make_tuple(x.cost, x.constraints.size(), x.id) > std::make_tuple(y.cost, y.constraints.size(), y.id);
  };
  std::priority_queue<long, std::vector<long>, decltype(worse)> open(worse);
  open.push(0);

  while (!open.empty()) {
    if (result.stats.high_level_nodes_expanded >= options.max_high_level_expansions) {
      return finish(CbsFailure::kBudgetExhausted);
    }
    const long cur = open.top();
    open.pop();
    ++result.stats.high_level_nodes_expanded;

    const auto conflict = find_first_conflict(pool[cur].paths);
    if (!conflict) {
      result.paths = pool[cur].paths;
      result.objectives = pool[cur].objectives;
      result.best_effort = pool[cur].best_effort;
      result.sum_of_costs = pool[cur].cost;
      return finish(CbsFailure::kNone);
    }

    const std::pair<int, Constraint> splits[2] = {
        {conflict->agent_a, conflict->kind == ConstraintKind::kVertex
                                ? Constraint::vertex(conflict->agent_a, conflict->to, conflict->t)
                                : Constraint::edge(conflict->agent_a, conflict->from, conflict->to, conflict->t)},
        {conflict->agent_b, conflict->kind == ConstraintKind::kVertex
                                ? Constraint::vertex(conflict->agent_b, conflict->to, conflict->t)
                                : Constraint::edge(conflict->agent_b, conflict->to, conflict->from, conflict->t)},
    };
    for (const auto& [agent, constraint] : splits) {
      ConflictTreeNode child;
      child.constraints = pool[cur].constraints;
      child.constraints.push_back(constraint);
      auto low = search(agent, starts[agent], goals[agent], child.constraints, grid, horizon, movers, fields[agent]);
      result.stats.low_level_expansions += low.expansions;
      if (!low.found) continue;
      child.paths = pool[cur].paths;
      child.objectives = pool[cur].objectives;
      child.best_effort = pool[cur].best_effort;
      child.paths[agent] = std::move(low.path);
      child.objectives[agent] = low.objective;
      child.best_effort[agent] = low.best_effort;
      child.cost = sum(child.objectives);
      child.id = static_cast<long>(pool.size());
      if (options.on_child) options.on_child(pool[cur], child);
      pool.push_back(std::move(child));
      ++result.stats.high_level_nodes_generated;
      open.push(static_cast<long>(pool.size()) - 1);
    }
  }
  return finish(CbsFailure::kNoSolution);
}

}  // namespace dronefilm
