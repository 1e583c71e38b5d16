#include "dronefilm/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dronefilm/random.hpp"
#include "dronefilm/viewpoints.hpp"

namespace dronefilm {

using nlohmann::json;

namespace {

std::string cell_str(Cell c) { return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")"; }

// Cells reachable from `from` on the static grid.
std::vector<std::uint8_t> reachable(const GridMap& grid, Cell from) {
  std::vector<std::uint8_t> seen(grid.cell_count(), 0);
  std::deque<Cell> queue{from};
  seen[grid.index(from)] = 1;
  while (!queue.empty()) {
    Cell c = queue.front();
    queue.pop_front();
    for (Cell m : kMoves4) {
      Cell n = c + m;
      if (grid.blocked(n) || seen[grid.index(n)]) continue;
      seen[grid.index(n)] = 1;
      queue.push_back(n);
    }
  }
  return seen;
}

std::vector<Cell> lazy_walk(const GridMap& grid, Cell start, int length, std::mt19937_64& rng) {
  std::vector<Cell> track;
  track.reserve(length);
  Cell c = start;
  for (int t = 0; t < length; ++t) {
    if (t > 0 && uniform_below(rng, 4) != 0) {
      Cell options[4];
      int count = 0;
      for (Cell m : kMoves4) {
        if (grid.free(c + m)) options[count++] = c + m;
      }
      if (count > 0) c = options[uniform_below(rng, count)];
    }
    track.push_back(c);
  }
  return track;
}

}  // namespace

ScenarioConfig generate_random_scenario(const GeneratorParams& p) {
  if (p.width <= 0 || p.height <= 0) throw std::invalid_argument("grid size must be positive");
  if (!(p.density >= 0.0 && p.density <= kMaxGeneratorDensity)) {
    throw std::invalid_argument("density must lie in [0, 0.5]");
  }
  if (p.n_actors < 1 || p.m_agents < 1) throw std::invalid_argument("need at least one actor and one agent");
  if (p.run_length < 1) throw std::invalid_argument("run length must be at least 1");

  const int total = p.width * p.height;
  const int n_obstacles = static_cast<int>(std::lround(p.density * total));
  const int n_starts = p.n_actors + p.m_agents;
  if (total - n_obstacles < n_starts) {
    throw GenerationError("cannot place " + std::to_string(n_starts) + " starts on " +
                          std::to_string(total - n_obstacles) + " free cells");
  }

  // Separate streams so that, for a fixed seed, raising the density only adds
  // obstacles and leaves actor starts where they were whenever possible.
  auto stream = [&](std::uint32_t k) {
    std::seed_seq seq{static_cast<std::uint32_t>(p.seed), static_cast<std::uint32_t>(p.seed >> 32), k};
    return std::mt19937_64(seq);
  };
  std::mt19937_64 obstacle_rng = stream(0), actor_rng = stream(1), agent_rng = stream(2);
  for (int attempt = 0; attempt < kGeneratorAttempts; ++attempt) {
    std::vector<int> cells(total);
    for (int i = 0; i < total; ++i) cells[i] = i;
    // Partial Fisher-Yates: the first n_obstacles entries become obstacles.
    for (int i = 0; i < n_obstacles; ++i) {
      int j = i + static_cast<int>(uniform_below(obstacle_rng, total - i));
      std::swap(cells[i], cells[j]);
    }
    std::vector<Cell> obstacles;
    for (int i = 0; i < n_obstacles; ++i) obstacles.push_back({cells[i] % p.width, cells[i] / p.width});
    GridMap grid(p.width, p.height, obstacles);

    std::vector<int> free_cells(cells.begin() + n_obstacles, cells.end());
    std::sort(free_cells.begin(), free_cells.end());

    ScenarioConfig cfg;
    cfg.seed = p.seed;
    cfg.map = grid;
    // Actor starts: the first free cells of a shuffle over the whole grid.
    std::vector<int> order(total);
    for (int i = 0; i < total; ++i) order[i] = i;
    std::vector<Cell> actor_starts;
    for (int i = 0; i < total && static_cast<int>(actor_starts.size()) < p.n_actors; ++i) {
      int j = i + static_cast<int>(uniform_below(actor_rng, total - i));
      std::swap(order[i], order[j]);
      if (grid.free(grid.cell_at(order[i]))) actor_starts.push_back(grid.cell_at(order[i]));
    }
    for (int a = 0; a < p.n_actors; ++a) {
      cfg.actors.push_back({a, lazy_walk(grid, actor_starts[a], p.run_length, actor_rng)});
    }

    std::set<Cell> used(actor_starts.begin(), actor_starts.end());
    const GridMap staged = grid.with_blocked(actor_starts);
    for (int d = 0; d < p.m_agents; ++d) {
      std::vector<Cell> candidates;
      if (p.placement == StartPlacement::kNearActors) {
        // Closest distance bin that still has a free cell.
        const auto feasible = feasible_viewpoints(0, actor_starts[d % p.n_actors], staged);
        for (int bin = 0; bin < kDistanceBins && candidates.empty(); ++bin) {
          for (const auto& vp : feasible) {
            if (vp.source.dist_idx == bin && !used.count(vp.cell)) candidates.push_back(vp.cell);
          }
        }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
      }
      if (candidates.empty()) {
        for (int c : free_cells) {
          if (!used.count(grid.cell_at(c))) candidates.push_back(grid.cell_at(c));
        }
        std::sort(candidates.begin(), candidates.end());
      }
      Cell start = candidates[uniform_below(agent_rng, candidates.size())];
      used.insert(start);
      cfg.agents.push_back({d, start});
    }

    auto seen = reachable(grid, cfg.agents.front().cell);
    bool connected = std::all_of(cfg.agents.begin(), cfg.agents.end(),
                                 [&](const AgentStart& s) { return seen[grid.index(s.cell)] != 0; });
    for (const auto& track : cfg.actors) {
      for (Cell c : track.positions) connected = connected && seen[grid.index(c)] != 0;
    }
    if (connected) return cfg;
  }
  throw GenerationError("no connected placement found after " + std::to_string(kGeneratorAttempts) +
                        " attempts");
}

void validate(const ScenarioConfig& cfg) {
  const GridMap& grid = cfg.map;
  if (grid.width() <= 0 || grid.height() <= 0) throw ScenarioError("width", "grid must be non-empty");
  if (cfg.horizon_steps < 1) throw ScenarioError("horizon_steps", "must be at least 1");
  if (cfg.execute_steps < 1 || cfg.execute_steps > cfg.horizon_steps) {
    throw ScenarioError("execute_steps", "must lie in [1, horizon_steps]");
  }
  if (!(cfg.step_seconds > 0.0) || !std::isfinite(cfg.step_seconds)) {
    throw ScenarioError("step_seconds", "must be positive");
  }
  if (!(cfg.fov.half_angle_deg > 0.0 && cfg.fov.half_angle_deg <= 180.0)) {
    throw ScenarioError("fov.half_angle_deg", "must lie in (0, 180]");
  }
  if (!(cfg.fov.range_cells >= 1.0) || !std::isfinite(cfg.fov.range_cells)) {
    throw ScenarioError("fov.range_cells", "must be at least 1");
  }
  if (!(cfg.hysteresis >= 0.0)) throw ScenarioError("hysteresis", "must be nonnegative");
  if (cfg.actors.empty()) throw ScenarioError("actors", "at least one actor required");
  if (cfg.agents.empty()) throw ScenarioError("agents", "at least one agent required");

  std::set<int> actor_ids;
  std::set<Cell> actor_starts;
  const std::size_t length = cfg.actors.front().positions.size();
  for (std::size_t a = 0; a < cfg.actors.size(); ++a) {
    const auto& track = cfg.actors[a];
    const std::string base = "actors[" + std::to_string(a) + "]";
    if (track.id < 0 || !actor_ids.insert(track.id).second) {
      throw ScenarioError(base + ".id", "ids must be unique and nonnegative");
    }
    if (track.positions.size() != length) throw ScenarioError(base + ".track", "all tracks must have equal length");
    for (std::size_t t = 0; t < track.positions.size(); ++t) {
      Cell c = track.positions[t];
      const std::string field = base + ".track[" + std::to_string(t) + "]";
      if (!grid.in_bounds(c)) throw ScenarioError(field, "cell " + cell_str(c) + " out of bounds");
      if (grid.blocked(c)) throw ScenarioError(field, "cell " + cell_str(c) + " is an obstacle");
      if (t > 0 && !adjacent_or_equal(track.positions[t - 1], c)) {
        throw ScenarioError(field, "jump larger than one 4-connected move");
      }
    }
    if (!track.positions.empty()) actor_starts.insert(track.positions.front());
  }

  std::set<int> agent_ids;
  std::set<Cell> agent_cells;
  for (std::size_t d = 0; d < cfg.agents.size(); ++d) {
    const auto& agent = cfg.agents[d];
    const std::string base = "agents[" + std::to_string(d) + "]";
    if (agent.id < 0 || !agent_ids.insert(agent.id).second) {
      throw ScenarioError(base + ".id", "ids must be unique and nonnegative");
    }
    Cell c = agent.cell;
    if (!grid.in_bounds(c)) throw ScenarioError(base + ".start", "cell " + cell_str(c) + " out of bounds");
    if (grid.blocked(c)) throw ScenarioError(base + ".start", "cell " + cell_str(c) + " is an obstacle");
    if (!agent_cells.insert(c).second) throw ScenarioError(base + ".start", "shared with another agent");
    if (actor_starts.count(c)) throw ScenarioError(base + ".start", "coincides with an actor start");
  }
}

Cell actor_position_at(const ActorTrack& track, int t) {
  if (track.positions.empty()) throw std::out_of_range("actor track is empty");
  if (t <= 0) return track.positions.front();
  if (t >= static_cast<int>(track.positions.size())) return track.positions.back();
  return track.positions[t];
}

// ---------------------------------------------------------------------------
// File format

namespace {

json cell_json(Cell c) { return json::array({c.x, c.y}); }

json cells_json(const std::vector<Cell>& cells) {
  json out = json::array();
  for (Cell c : cells) out.push_back(cell_json(c));
  return out;
}

const json& require(const json& obj, const std::string& key, const std::string& field) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ScenarioError(field, "missing field");
  return *it;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& prefix) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; });
    if (!known) throw ScenarioError(prefix + it.key(), "unknown field");
  }
}

int as_int(const json& v, const std::string& field) {
  if (!v.is_number_integer()) throw ScenarioError(field, "expected an integer");
  auto n = v.get<std::int64_t>();
  if (n < INT32_MIN || n > INT32_MAX) throw ScenarioError(field, "integer out of range");
  return static_cast<int>(n);
}

double as_real(const json& v, const std::string& field) {
  if (!v.is_number()) throw ScenarioError(field, "expected a number");
  return v.get<double>();
}

const json& as_object(const json& v, const std::string& field) {
  if (!v.is_object()) throw ScenarioError(field, "expected an object");
  return v;
}

const json& as_array(const json& v, const std::string& field) {
  if (!v.is_array()) throw ScenarioError(field, "expected an array");
  return v;
}

Cell as_cell(const json& v, const std::string& field) {
  if (!v.is_array() || v.size() != 2) throw ScenarioError(field, "expected [x, y]");
  return {as_int(v[0], field + "[0]"), as_int(v[1], field + "[1]")};
}

}  // namespace

std::string serialize_scenario(const ScenarioConfig& cfg) {
  // One top-level key per line, compact values, fixed key order.
  json actors = json::array();
  for (const auto& a : cfg.actors) {
    json entry = json::object();
    entry["id"] = a.id;
    entry["track"] = cells_json(a.positions);
    actors.push_back(entry);
  }
  json agents = json::array();
  for (const auto& a : cfg.agents) {
    json entry = json::object();
    entry["id"] = a.id;
    entry["start"] = cell_json(a.cell);
    agents.push_back(entry);
  }
  json fov = json::object();
  fov["half_angle_deg"] = cfg.fov.half_angle_deg;
  fov["range_cells"] = cfg.fov.range_cells;

  const std::pair<const char*, json> fields[] = {
      {"seed", cfg.seed},
      {"width", cfg.map.width()},
      {"height", cfg.map.height()},
      {"obstacles", cells_json(cfg.map.obstacles())},
      {"actors", actors},
      {"agents", agents},
      {"horizon_steps", cfg.horizon_steps},
      {"step_seconds", cfg.step_seconds},
      {"execute_steps", cfg.execute_steps},
      {"fov", fov},
      {"hysteresis", cfg.hysteresis},
  };
  std::ostringstream out;
  out << "{\n";
  for (std::size_t i = 0; i < std::size(fields); ++i) {
    out << "  " << json(fields[i].first).dump() << ": " << fields[i].second.dump();
    out << (i + 1 < std::size(fields) ? ",\n" : "\n");
  }
  out << "}\n";
  return out.str();
}

ScenarioConfig parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError("document", std::string("malformed JSON: ") + e.what());
  }
  as_object(doc, "document");
  reject_unknown(doc,
                 {"seed", "width", "height", "obstacles", "actors", "agents", "horizon_steps", "step_seconds",
                  "execute_steps", "fov", "hysteresis"},
                 "");

  ScenarioConfig cfg;
  const json& seed = require(doc, "seed", "seed");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<std::int64_t>() >= 0)) {
    throw ScenarioError("seed", "expected a nonnegative integer");
  }
  cfg.seed = seed.get<std::uint64_t>();

  int width = as_int(require(doc, "width", "width"), "width");
  int height = as_int(require(doc, "height", "height"), "height");
  if (width <= 0) throw ScenarioError("width", "must be positive");
  if (height <= 0) throw ScenarioError("height", "must be positive");

  std::vector<Cell> obstacles;
  const json& obs = as_array(require(doc, "obstacles", "obstacles"), "obstacles");
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const std::string field = "obstacles[" + std::to_string(i) + "]";
    Cell c = as_cell(obs[i], field);
    if (c.x < 0 || c.y < 0 || c.x >= width || c.y >= height) {
      throw ScenarioError(field, "cell " + cell_str(c) + " out of bounds");
    }
    obstacles.push_back(c);
  }
  cfg.map = GridMap(width, height, std::move(obstacles));

  const json& actors = as_array(require(doc, "actors", "actors"), "actors");
  for (std::size_t i = 0; i < actors.size(); ++i) {
    const std::string base = "actors[" + std::to_string(i) + "]";
    const json& entry = as_object(actors[i], base);
    reject_unknown(entry, {"id", "track"}, base + ".");
    ActorTrack track;
    track.id = as_int(require(entry, "id", base + ".id"), base + ".id");
    const json& cells = as_array(require(entry, "track", base + ".track"), base + ".track");
    for (std::size_t t = 0; t < cells.size(); ++t) {
      track.positions.push_back(as_cell(cells[t], base + ".track[" + std::to_string(t) + "]"));
    }
    cfg.actors.push_back(std::move(track));
  }

  const json& agents = as_array(require(doc, "agents", "agents"), "agents");
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const std::string base = "agents[" + std::to_string(i) + "]";
    const json& entry = as_object(agents[i], base);
    reject_unknown(entry, {"id", "start"}, base + ".");
    AgentStart start;
    start.id = as_int(require(entry, "id", base + ".id"), base + ".id");
    start.cell = as_cell(require(entry, "start", base + ".start"), base + ".start");
    cfg.agents.push_back(start);
  }

  cfg.horizon_steps = as_int(require(doc, "horizon_steps", "horizon_steps"), "horizon_steps");
  cfg.step_seconds = as_real(require(doc, "step_seconds", "step_seconds"), "step_seconds");
  cfg.execute_steps = as_int(require(doc, "execute_steps", "execute_steps"), "execute_steps");

  const json& fov = as_object(require(doc, "fov", "fov"), "fov");
  reject_unknown(fov, {"half_angle_deg", "range_cells"}, "fov.");
  cfg.fov.half_angle_deg = as_real(require(fov, "half_angle_deg", "fov.half_angle_deg"), "fov.half_angle_deg");
  cfg.fov.range_cells = as_real(require(fov, "range_cells", "fov.range_cells"), "fov.range_cells");
  cfg.hysteresis = as_real(require(doc, "hysteresis", "hysteresis"), "hysteresis");

  validate(cfg);
  return cfg;
}

void save_scenario(const ScenarioConfig& cfg, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << serialize_scenario(cfg);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace dronefilm
