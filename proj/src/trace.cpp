#include "dronefilm/trace.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace dronefilm {

using ojson = nlohmann::ordered_json;

namespace {

ojson cell_json(Cell c) { return ojson::array({c.x, c.y}); }

ojson cells_json(const std::vector<Cell>& cells) {
  ojson out = ojson::array();
  for (Cell c : cells) out.push_back(cell_json(c));
  return out;
}

ojson ids_json(const std::vector<int>& ids) {
  ojson out = ojson::array();
  for (int id : ids) out.push_back(id);
  return out;
}

ojson payload_json(const AssignmentEvent& e) {
  ojson tuples = ojson::array();
  for (const auto& t : e.assignment.tuples) {
    ojson entry;
    entry["agent"] = t.agent_id;
    entry["actor"] = t.actor_id;
    entry["cell"] = cell_json(t.viewpoint.cell);
    entry["facing"] = t.viewpoint.facing.yaw;
    entry["yaw_idx"] = t.viewpoint.source.yaw_idx;
    entry["tilt_idx"] = t.viewpoint.source.tilt_idx;
    entry["dist_idx"] = t.viewpoint.source.dist_idx;
    tuples.push_back(entry);
  }
  ojson out;
  out["adopted_fresh"] = e.adopted_fresh;
  out["swapped"] = e.swapped;
  out["total_cost"] = e.total_cost;
  out["feasible_viewpoints"] = e.assignment.feasible_viewpoints;
  out["tuples"] = tuples;
  out["uncoverable"] = ids_json(e.assignment.uncoverable_actors);
  out["unassigned"] = ids_json(e.assignment.unassigned_agents);
  return out;
}

ojson payload_json(const PlanEvent& e) {
  ojson paths = ojson::array();
  for (const auto& p : e.paths) {
    ojson entry;
    entry["agent"] = p.agent_id;
    entry["goal"] = cell_json(p.goal);
    entry["cells"] = cells_json(p.cells);
    entry["best_effort"] = p.best_effort;
    paths.push_back(entry);
  }
  ojson out;
  out["ok"] = e.ok;
  out["failure"] = e.failure;
  out["hold"] = e.hold;
  out["nodes_expanded"] = e.nodes_expanded;
  out["low_level_expansions"] = e.low_level_expansions;
  out["sum_of_costs"] = e.sum_of_costs;
  out["paths"] = paths;
  return out;
}

ojson payload_json(const MoveEvent& e) {
  ojson out;
  out["agent"] = e.agent_id;
  out["from"] = cell_json(e.from);
  out["to"] = cell_json(e.to);
  return out;
}

ojson payload_json(const CoverageEvent& e) {
  ojson actors = ojson::array();
  for (const auto& a : e.actors) {
    ojson entry;
    entry["id"] = a.id;
    entry["cell"] = cell_json(a.cell);
    actors.push_back(entry);
  }
  ojson agents = ojson::array();
  for (const auto& a : e.agents) {
    ojson entry;
    entry["id"] = a.agent_id;
    entry["cell"] = cell_json(a.cell);
    entry["facing"] = a.facing.yaw;
    entry["actor"] = a.actor_id ? ojson(*a.actor_id) : ojson(nullptr);
    entry["covered"] = a.covered;
    agents.push_back(entry);
  }
  ojson out;
  out["count"] = e.count;
  out["actors"] = actors;
  out["agents"] = agents;
  return out;
}

ojson metrics_json(const RunMetrics& m) {
  ojson out;
  out["actors_total_cost"] = m.actors_total_cost;
  out["agents_total_cost"] = m.agents_total_cost;
  out["nodes_expanded"] = m.nodes_expanded;
  out["low_level_expansions"] = m.low_level_expansions;
  out["initial_viewpoints"] = m.initial_viewpoints;
  out["tracking_accuracy"] = m.tracking_accuracy;
  out["empty_run"] = m.empty_run;
  out["covered_samples"] = m.covered_samples;
  out["active_samples"] = m.active_samples;
  out["timesteps"] = m.timesteps;
  out["planned_epochs"] = m.planned_epochs;
  out["successful_epochs"] = m.successful_epochs;
  out["hold_epochs"] = m.hold_epochs;
  out["swaps"] = m.swaps;
  out["search_objective"] = m.search_objective;
  return out;
}

ojson payload_json(const MetricEvent& e) {
  ojson world;
  world["width"] = e.map.width();
  world["height"] = e.map.height();
  world["obstacles"] = cells_json(e.map.obstacles());
  world["fov"] = {{"half_angle_deg", e.fov.half_angle_deg}, {"range_cells", e.fov.range_cells}};
  ojson out;
  out["metrics"] = metrics_json(e.metrics);
  out["world"] = world;
  return out;
}

std::string record(const TraceEvent& e) {
  ojson line;
  line["t"] = e.t;
  line["kind"] = to_string(e.kind);
  line["payload"] = std::visit([](const auto& p) { return payload_json(p); }, e.payload);
  return line.dump();
}

}  // namespace

std::string trace_to_ndjson(const RunResult& result, const ScenarioConfig& cfg) {
  std::string out;
  for (const auto& e : result.trace) {
    out += record(e);
    out += '\n';
  }
  out += record({cfg.run_length(), EventKind::kMetric, MetricEvent{result.metrics, cfg.map, cfg.fov}});
  out += '\n';
  return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string metrics_to_json(const RunMetrics& metrics, int agents, int actors, double density_pct) {
  ojson out;
  out["agents"] = agents;
  out["actors"] = actors;
  out["obstacle_density_pct"] = density_pct;
  const ojson fields = metrics_json(metrics);
  for (const auto& [k, v] : fields.items()) out[k] = v;
  out["completion_time_s"] = metrics.completion_time_s;
  return out.dump(2) + "\n";
}

namespace {

const ojson& field(const ojson& obj, const char* key, int line) {
  if (!obj.is_object() || !obj.contains(key)) throw TraceError(line, std::string("missing field '") + key + "'");
  return obj.at(key);
}

int int_field(const ojson& obj, const char* key, int line) {
  const ojson& v = field(obj, key, line);
  if (!v.is_number_integer()) throw TraceError(line, std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

Cell cell_field(const ojson& obj, const char* key, int line) {
  const ojson& v = field(obj, key, line);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer()) {
    throw TraceError(line, std::string("field '") + key + "' must be [x, y]");
  }
  return {v[0].get<int>(), v[1].get<int>()};
}

}  // namespace

ParsedTrace parse_trace(std::string_view ndjson) {
  ParsedTrace parsed;
  std::istringstream in{std::string(ndjson)};
  std::string text;
  int line = 0;
  const char* kinds[] = {"assignment", "plan", "move", "coverage", "metric"};
  while (std::getline(in, text)) {
    ++line;
    if (text.empty()) continue;
    ojson rec;
    try {
      rec = ojson::parse(text);
    } catch (const ojson::parse_error&) {
      throw TraceError(line, "not valid JSON");
    }
    if (!rec.is_object()) throw TraceError(line, "record must be an object");
    const int t = int_field(rec, "t", line);
    const ojson& kind = field(rec, "kind", line);
    const ojson& payload = field(rec, "payload", line);
    if (!kind.is_string() || std::none_of(std::begin(kinds), std::end(kinds),
                                          [&](const char* k) { return kind.get<std::string>() == k; })) {
      throw TraceError(line, "unknown kind");
    }
    if (!payload.is_object()) throw TraceError(line, "payload must be an object");
    ++parsed.record_count;

    const std::string k = kind.get<std::string>();
    if (k == "coverage") {
      TraceFrame frame;
      frame.t = t;
      frame.coverage.count = int_field(payload, "count", line);
      const ojson& actors = field(payload, "actors", line);
      const ojson& agents = field(payload, "agents", line);
      if (!actors.is_array() || !agents.is_array()) throw TraceError(line, "actors/agents must be arrays");
      for (const auto& a : actors) frame.coverage.actors.push_back({int_field(a, "id", line), cell_field(a, "cell", line), {}});
      for (const auto& a : agents) {
        AgentView view;
        view.agent_id = int_field(a, "id", line);
        view.cell = cell_field(a, "cell", line);
        view.facing = Heading{int_field(a, "facing", line)};
        const ojson& actor = field(a, "actor", line);
        if (actor.is_number_integer()) {
          view.actor_id = actor.get<int>();
        } else if (!actor.is_null()) {
          throw TraceError(line, "field 'actor' must be an integer or null");
        }
        const ojson& covered = field(a, "covered", line);
        if (!covered.is_boolean()) throw TraceError(line, "field 'covered' must be a boolean");
        view.covered = covered.get<bool>();
        frame.coverage.agents.push_back(view);
      }
      parsed.frames.push_back(std::move(frame));
    } else if (k == "metric") {
      const ojson& world = field(payload, "world", line);
      const int width = int_field(world, "width", line);
      const int height = int_field(world, "height", line);
      const ojson& obstacles = field(world, "obstacles", line);
      if (!obstacles.is_array()) throw TraceError(line, "obstacles must be an array");
      std::vector<Cell> cells;
      for (const auto& o : obstacles) {
        if (!o.is_array() || o.size() != 2) throw TraceError(line, "obstacle must be [x, y]");
        cells.push_back({o[0].get<int>(), o[1].get<int>()});
      }
      try {
        parsed.map = GridMap(width, height, std::move(cells));
      } catch (const std::invalid_argument& e) {
        throw TraceError(line, e.what());
      }
      const ojson& fov = field(world, "fov", line);
      const ojson& half = field(fov, "half_angle_deg", line);
      const ojson& range = field(fov, "range_cells", line);
      if (!half.is_number() || !range.is_number()) throw TraceError(line, "fov fields must be numbers");
      parsed.fov = {half.get<double>(), range.get<double>()};
      parsed.has_world = true;
    }
  }
  return parsed;
}

}  // namespace dronefilm
