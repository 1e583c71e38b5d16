#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dronefilm/scenario.hpp"
#include "dronefilm/sim.hpp"

namespace dronefilm {

// One line of the results table. Column order is fixed.
struct BenchRow {
  double agents = 0;
  double actors = 0;
  double initial_viewpoints = 0;
  double obstacle_density_pct = 0;
  double actors_total_cost = 0;
  double agents_total_cost = 0;
  double nodes_expanded = 0;
  double tracking_accuracy_pct = 0;
  double completion_time_s = 0;
};

inline constexpr std::array<const char*, 9> kBenchColumns = {
    "agents",           "actors",         "initial_viewpoints",    "obstacle_density_pct", "actors_total_cost",
    "agents_total_cost", "nodes_expanded", "tracking_accuracy_pct", "completion_time_s"};

BenchRow bench_row(const ScenarioConfig& cfg, const RunMetrics& metrics);

struct BenchConfig {
  std::vector<int> agents;
  std::vector<int> actors;
  std::vector<double> densities;  // fractions
  int seeds_per_cell = 1;
  int size = 20;
  int run_length = 30;
  std::uint64_t base_seed = 1;
  bool record_timing = true;  // false writes 0 for completion time
  int threads = 0;            // 0 = hardware concurrency
  SimOptions sim;
};

struct BenchEntry {
  BenchRow row;
  bool mean = false;
  std::uint64_t seed = 0;  // unused on mean rows
  RunMetrics metrics;      // unused on mean rows
};

// Cells are agents x actors x densities in flag order; each cell lists its
// seed rows (base_seed + i) followed by one mean row. Runs are spread over
// worker threads; the output order never depends on scheduling. Throws
// std::invalid_argument on an empty grid.
std::vector<BenchEntry> run_bench(const BenchConfig& config);

std::string bench_csv(std::span<const BenchEntry> entries);
std::string bench_markdown(std::span<const BenchEntry> entries);

}  // namespace dronefilm
