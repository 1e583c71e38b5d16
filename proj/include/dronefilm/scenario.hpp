#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dronefilm/grid.hpp"
#include "dronefilm/visibility.hpp"

namespace dronefilm {

// Scripted actor motion, one cell per timestep.
struct ActorTrack {
  int id = 0;
  std::vector<Cell> positions;

  friend bool operator==(const ActorTrack&, const ActorTrack&) = default;
};

struct AgentStart {
  int id = 0;
  Cell cell;

  friend bool operator==(const AgentStart&, const AgentStart&) = default;
};

struct ScenarioConfig {
  std::uint64_t seed = 0;
  GridMap map;
  std::vector<ActorTrack> actors;
  std::vector<AgentStart> agents;
  int horizon_steps = 5;
  double step_seconds = 2.0;
  int execute_steps = 1;
  FovModel fov;
  double hysteresis = 0.0;

  // Number of timesteps in the tracks (all tracks share a length).
  int run_length() const { return actors.empty() ? 0 : static_cast<int>(actors.front().positions.size()); }

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

// Validation failure; `field()` names the offending entry, e.g. "actors[1].track[4]".
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// The generator could not produce a scenario satisfying its constraints.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class StartPlacement {
  kUniform,     // any free cell
  kNearActors,  // a feasible viewpoint cell of actor (agent index mod n)
};

struct GeneratorParams {
  std::uint64_t seed = 0;
  int width = 20;
  int height = 20;
  double density = 0.0;
  int n_actors = 1;
  int m_agents = 1;
  int run_length = 30;
  StartPlacement placement = StartPlacement::kNearActors;
};

inline constexpr double kMaxGeneratorDensity = 0.5;
inline constexpr int kGeneratorAttempts = 100;

// Seeded scenario: uniform obstacle placement, lazy random walks for actors,
// distinct agent starts chosen per `placement` (any free cell once an actor
// has no viewpoint cell left). Every agent start is connected to every actor
// track cell. Throws GenerationError when placement is infeasible and
// std::invalid_argument for out-of-range parameters.
ScenarioConfig generate_random_scenario(const GeneratorParams& params);

// Throws ScenarioError on the first violated invariant.
void validate(const ScenarioConfig& cfg);

// Clamps to the final position for t past the end. Throws std::out_of_range
// on an empty track.
Cell actor_position_at(const ActorTrack& track, int t);

std::string serialize_scenario(const ScenarioConfig& cfg);
// Parses and validates. Unknown fields are rejected.
ScenarioConfig parse_scenario(std::string_view text);

void save_scenario(const ScenarioConfig& cfg, const std::filesystem::path& path);
ScenarioConfig load_scenario(const std::filesystem::path& path);

}  // namespace dronefilm
