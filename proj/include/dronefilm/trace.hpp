#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dronefilm/scenario.hpp"
#include "dronefilm/sim.hpp"

namespace dronefilm {

// Newline-delimited JSON, one {"t", "kind", "payload"} object per line. The
// final line is the metric record, which also carries the map and FOV so a
// trace can be rendered on its own. Wall-clock fields are never written so the
// bytes depend only on the scenario.
std::string trace_to_ndjson(const RunResult& result, const ScenarioConfig& cfg);

std::uint64_t fnv1a64(std::string_view bytes);
inline std::uint64_t trace_hash(const RunResult& result, const ScenarioConfig& cfg) {
  return fnv1a64(trace_to_ndjson(result, cfg));
}

// Metrics document for `run --metrics-out`; includes completion time.
std::string metrics_to_json(const RunMetrics& metrics, int agents, int actors, double density_pct);

class TraceError : public std::runtime_error {
 public:
  TraceError(int line, const std::string& what)
      : std::runtime_error("record " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// What the renderer needs from a trace.
struct TraceFrame {
  int t = 0;
  CoverageEvent coverage;
};

struct ParsedTrace {
  std::vector<TraceFrame> frames;  // one per coverage record, in file order
  bool has_world = false;
  GridMap map;
  FovModel fov;
  int record_count = 0;
};

// Checks every record's envelope and the fields the renderer reads. Throws
// TraceError naming the 1-based line of the first bad record.
ParsedTrace parse_trace(std::string_view ndjson);

}  // namespace dronefilm
