#include "dronefilm/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

namespace dronefilm {

double euclidean(Cell a, Cell b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  return std::sqrt(dx * dx + dy * dy);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Hungarian algorithm with potentials, rows <= cols. Returns the optimal value
// over the active rows/cols of `costs`.
double hungarian(const CostMatrix& costs, const std::vector<int>& rows, const std::vector<int>& cols) {
  const int n = static_cast<int>(rows.size());
  const int m = static_cast<int>(cols.size());
  if (n == 0) return 0.0;
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0), minv(m + 1);
  std::vector<int> p(m + 1, 0), way(m + 1, 0);
  std::vector<char> used(m + 1);
  auto a = [&](int i, int j) { return costs.at(rows[i - 1], cols[j - 1]); };
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = a(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  double total = 0.0;
  for (int j = 1; j <= m; ++j) {
    if (p[j] != 0) total += a(p[j], j);
  }
  return total;
}

// Optimum over a row/col subset, transposing when there are more rows.
double optimum(const CostMatrix& costs, const std::vector<int>& rows, const std::vector<int>& cols) {
  if (rows.size() <= cols.size()) return hungarian(costs, rows, cols);
  CostMatrix t(costs.cols(), costs.rows());
  for (int r = 0; r < costs.rows(); ++r) {
    for (int c = 0; c < costs.cols(); ++c) t.at(c, r) = costs.at(r, c);
  }
  return hungarian(t, cols, rows);
}

bool same_value(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

Matching solve_min_cost(const CostMatrix& costs) {
  Matching result;
  result.col_of_row.assign(costs.rows(), -1);
  std::vector<int> rows(costs.rows()), cols(costs.cols());
  for (int r = 0; r < costs.rows(); ++r) rows[r] = r;
  for (int c = 0; c < costs.cols(); ++c) cols[c] = c;
  double remaining = optimum(costs, rows, cols);

  // Fix rows one at a time to the smallest column that keeps the optimum.
  for (int r = 0; r < costs.rows(); ++r) {
    std::vector<int> rest_rows(rows.begin() + 1, rows.end());
    bool fixed = false;
    for (std::size_t ci = 0; ci < cols.size() && !fixed; ++ci) {
      std::vector<int> rest_cols = cols;
      rest_cols.erase(rest_cols.begin() + static_cast<long>(ci));
      const double sub = optimum(costs, rest_rows, rest_cols);
      if (same_value(costs.at(r, cols[ci]) + sub, remaining)) {
        result.col_of_row[r] = cols[ci];
        remaining = sub;
        cols = std::move(rest_cols);
        fixed = true;
      }
    }
    // Leaving this row unmatched is only allowed when rows outnumber columns;
    // if no column kept the optimum the row must be one of the unmatched.
    rows = std::move(rest_rows);
  }
  for (int r = 0; r < costs.rows(); ++r) {
    if (result.col_of_row[r] >= 0) result.total += costs.at(r, result.col_of_row[r]);
  }
  return result;
}

const AssignmentTuple* Assignment::for_agent(int agent_id) const {
  for (const auto& t : tuples) {
    if (t.agent_id == agent_id) return &t;
  }
  return nullptr;
}

int Assignment::covered_actor_count() const {
  std::set<int> actors;
  for (const auto& t : tuples) actors.insert(t.actor_id);
  return static_cast<int>(actors.size());
}

double total_cost(const Assignment& x, std::span<const AgentState> agents) {
  double total = 0.0;
  for (const auto& t : x.tuples) {
    auto it = std::find_if(agents.begin(), agents.end(), [&](const AgentState& a) { return a.id == t.agent_id; });
    if (it != agents.end()) total += euclidean(it->cell, t.viewpoint.cell);
  }
  return total;
}

namespace {

bool watches(Cell cell, const ActorState& actor, const GridMap& grid, const ViewpointOptions& options) {
  for (Cell c : actor.window) {
    if (c == cell || euclidean(cell, c) > options.window_range + 1e-9 || !line_of_sight(grid, cell, c)) return false;
  }
  return true;
}

std::vector<GridViewpoint> offered(const ActorState& actor, std::vector<GridViewpoint> feasible,
                                   const GridMap& grid, const ViewpointOptions& options) {
  std::vector<GridViewpoint> steady;
  for (const auto& v : feasible) {
    if (watches(v.cell, actor, grid, options)) steady.push_back(v);
  }
  return steady.empty() ? feasible : steady;
}

struct ActorSlots {
  ActorState actor;
  std::vector<GridViewpoint> feasible;
  std::vector<GridViewpoint> held;
};

}  // namespace

Assignment assign(std::span<const AgentState> agents, std::span<const ActorState> actors, const GridMap& grid,
                  const ViewpointOptions& options) {
  Assignment x;
  std::vector<ActorSlots> coverable;
  for (const auto& actor : actors) {
    auto feasible = feasible_viewpoints(actor.id, actor.cell, grid, options);
    x.feasible_viewpoints += static_cast<int>(feasible.size());
    if (feasible.empty()) {
      x.uncoverable_actors.push_back(actor.id);
    } else {
      coverable.push_back({actor, offered(actor, std::move(feasible), grid, options), {}});
    }
  }
  std::sort(x.uncoverable_actors.begin(), x.uncoverable_actors.end());
  if (coverable.empty() || agents.empty()) {
    for (const auto& a : agents) x.unassigned_agents.push_back(a.id);
    std::sort(x.unassigned_agents.begin(), x.unassigned_agents.end());
    return x;
  }

  // Phase 1: agents to actors.
  CostMatrix actor_costs(static_cast<int>(agents.size()), static_cast<int>(coverable.size()));
  for (std::size_t d = 0; d < agents.size(); ++d) {
    for (std::size_t a = 0; a < coverable.size(); ++a) {
      double best = kInf;
      for (const auto& v : coverable[a].feasible) best = std::min(best, euclidean(agents[d].cell, v.cell));
      actor_costs.at(static_cast<int>(d), static_cast<int>(a)) = best;
    }
  }
  const Matching primary = solve_min_cost(actor_costs);

  // Phase 2: cheapest viewpoint on the matched actor, cells kept distinct.
  std::vector<Cell> used;
  std::vector<std::size_t> surplus;
  for (std::size_t d = 0; d < agents.size(); ++d) {
    const int a = primary.col_of_row[d];
    if (a < 0) {
      surplus.push_back(d);
      continue;
    }
    const GridViewpoint* best = nullptr;
    double best_cost = kInf;
    for (const auto& v : coverable[a].feasible) {
      if (std::find(used.begin(), used.end(), v.cell) != used.end()) continue;
      const double c = euclidean(agents[d].cell, v.cell);
      if (c < best_cost) {
        best = &v;
        best_cost = c;
      }
    }
    if (!best) {
      x.unassigned_agents.push_back(agents[d].id);
      continue;
    }
    used.push_back(best->cell);
    coverable[a].held.push_back(*best);
    x.tuples.push_back({coverable[a].actor.id, agents[d].id, *best});
  }

  // Phase 3: surplus agents to diverse extra viewpoints.
  if (!surplus.empty()) {
    struct Slot {
      std::size_t actor;
      GridViewpoint viewpoint;
    };
    std::vector<Slot> slots;
    std::vector<char> exhausted(coverable.size(), 0);
    while (slots.size() < surplus.size()) {
      std::size_t pick = coverable.size();
      for (std::size_t a = 0; a < coverable.size(); ++a) {
        if (exhausted[a]) continue;
        if (pick == coverable.size() ||
            std::make_pair(coverable[a].held.size(), coverable[a].actor.id) <
                std::make_pair(coverable[pick].held.size(), coverable[pick].actor.id)) {
          pick = a;
        }
      }
      if (pick == coverable.size()) break;
      auto next = extend_diverse(coverable[pick].held, 1, coverable[pick].feasible, used);
      if (next.empty()) {
        exhausted[pick] = 1;
        continue;
      }
      used.push_back(next.front().cell);
      coverable[pick].held.push_back(next.front());
      slots.push_back({pick, next.front()});
    }
    if (!slots.empty()) {
      CostMatrix slot_costs(static_cast<int>(surplus.size()), static_cast<int>(slots.size()));
      for (std::size_t s = 0; s < surplus.size(); ++s) {
        for (std::size_t k = 0; k < slots.size(); ++k) {
          slot_costs.at(static_cast<int>(s), static_cast<int>(k)) =
              euclidean(agents[surplus[s]].cell, slots[k].viewpoint.cell);
        }
      }
      const Matching extra = solve_min_cost(slot_costs);
      for (std::size_t s = 0; s < surplus.size(); ++s) {
        const int k = extra.col_of_row[s];
        const auto& agent = agents[surplus[s]];
        if (k < 0) {
          x.unassigned_agents.push_back(agent.id);
        } else {
          x.tuples.push_back({coverable[slots[k].actor].actor.id, agent.id, slots[k].viewpoint});
        }
      }
    } else {
      for (std::size_t d : surplus) x.unassigned_agents.push_back(agents[d].id);
    }
  }

  std::sort(x.tuples.begin(), x.tuples.end(),
            [](const AssignmentTuple& a, const AssignmentTuple& b) { return a.agent_id < b.agent_id; });
  std::sort(x.unassigned_agents.begin(), x.unassigned_agents.end());
  return x;
}

std::optional<Assignment> reproject(const Assignment& current, std::span<const ActorState> actors,
                                    const GridMap& grid, const ViewpointOptions& options) {
  Assignment out = current;
  std::set<Cell> cells;
  for (auto& t : out.tuples) {
    auto it = std::find_if(actors.begin(), actors.end(), [&](const ActorState& a) { return a.id == t.actor_id; });
    if (it == actors.end()) return std::nullopt;
    auto projected = to_grid(t.viewpoint.source, it->cell, grid, options);
    if (!projected || !cells.insert(projected->cell).second) return std::nullopt;
    // A pose that lost the window is dropped if the actor still has one that keeps it.
    if (!watches(projected->cell, *it, grid, options)) {
      auto any = feasible_viewpoints(it->id, it->cell, grid, options);
      if (std::any_of(any.begin(), any.end(),
                      [&](const GridViewpoint& v) { return watches(v.cell, *it, grid, options); })) {
        return std::nullopt;
      }
    }
    t.viewpoint = *projected;
  }
  return out;
}

ReassignResult reassign(const Assignment& current, const Assignment& fresh, std::span<const AgentState> agents,
                        std::span<const ActorState> actors, const GridMap& grid, double hysteresis,
                        const ViewpointOptions& options) {
  auto adopt = [&]() {
    ReassignResult r{fresh, true, false};
    for (const auto& t : fresh.tuples) {
      const auto* old = current.for_agent(t.agent_id);
      if (old && old->actor_id != t.actor_id) r.swapped = true;
    }
    return r;
  };
  if (current.tuples.empty()) return adopt();
  auto kept = reproject(current, actors, grid, options);
  if (!kept) return adopt();
  if (fresh.covered_actor_count() > kept->covered_actor_count() || fresh.tuples.size() > kept->tuples.size()) {
    return adopt();
  }
  if (total_cost(*kept, agents) - total_cost(fresh, agents) > hysteresis) return adopt();
  // Bookkeeping fields describe this epoch's projection, not the old one.
  kept->feasible_viewpoints = fresh.feasible_viewpoints;
  kept->uncoverable_actors = fresh.uncoverable_actors;
  return {*std::move(kept), false, false};
}

}  // namespace dronefilm
