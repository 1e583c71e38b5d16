#include "dronefilm/bench.hpp"

#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace dronefilm {

BenchRow bench_row(const ScenarioConfig& cfg, const RunMetrics& m) {
  BenchRow row;
  row.agents = static_cast<double>(cfg.agents.size());
  row.actors = static_cast<double>(cfg.actors.size());
  row.initial_viewpoints = m.initial_viewpoints;
  row.obstacle_density_pct = 100.0 * static_cast<double>(cfg.map.obstacles().size()) / cfg.map.cell_count();
  row.actors_total_cost = m.actors_total_cost;
  row.agents_total_cost = m.agents_total_cost;
  row.nodes_expanded = static_cast<double>(m.nodes_expanded);
  row.tracking_accuracy_pct = m.tracking_accuracy;
  row.completion_time_s = m.completion_time_s;
  return row;
}

namespace {

struct Job {
  int agents;
  int actors;
  double density;
  std::uint64_t seed;
};

}  // namespace

std::vector<BenchEntry> run_bench(const BenchConfig& config) {
  if (config.agents.empty() || config.actors.empty() || config.densities.empty()) {
    throw std::invalid_argument("bench grid is empty");
  }
  if (config.seeds_per_cell < 1) throw std::invalid_argument("seeds per cell must be at least 1");

  std::vector<Job> jobs;
  for (int agents : config.agents) {
    for (int actors : config.actors) {
      for (double density : config.densities) {
        for (int i = 0; i < config.seeds_per_cell; ++i) {
          jobs.push_back({agents, actors, density, config.base_seed + static_cast<std::uint64_t>(i)});
        }
      }
    }
  }

  std::vector<BenchEntry> results(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      try {
        const Job& job = jobs[j];
        GeneratorParams params{job.seed, config.size, config.size, job.density, job.actors, job.agents,
                               config.run_length};
        const ScenarioConfig cfg = generate_random_scenario(params);
        RunResult run_result = run(cfg, config.sim);
        if (!config.record_timing) run_result.metrics.completion_time_s = 0.0;
        results[j] = {bench_row(cfg, run_result.metrics), false, job.seed, run_result.metrics};
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  unsigned threads = config.threads > 0 ? static_cast<unsigned>(config.threads) : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::vector<BenchEntry> out;
  const std::size_t per_cell = static_cast<std::size_t>(config.seeds_per_cell);
  for (std::size_t start = 0; start < results.size(); start += per_cell) {
    BenchRow mean;
    for (std::size_t j = start; j < start + per_cell; ++j) {
      const BenchRow& r = results[j].row;
      mean.agents += r.agents;
      mean.actors += r.actors;
      mean.initial_viewpoints += r.initial_viewpoints;
      mean.obstacle_density_pct += r.obstacle_density_pct;
      mean.actors_total_cost += r.actors_total_cost;
      mean.agents_total_cost += r.agents_total_cost;
      mean.nodes_expanded += r.nodes_expanded;
      mean.tracking_accuracy_pct += r.tracking_accuracy_pct;
      mean.completion_time_s += r.completion_time_s;
      out.push_back(results[j]);
    }
    const double n = static_cast<double>(per_cell);
    for (double* v : {&mean.agents, &mean.actors, &mean.initial_viewpoints, &mean.obstacle_density_pct,
                      &mean.actors_total_cost, &mean.agents_total_cost, &mean.nodes_expanded,
                      &mean.tracking_accuracy_pct, &mean.completion_time_s}) {
      *v /= n;
    }
    out.push_back({mean, true, 0, {}});
  }
  return out;
}

namespace {

std::string num(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::vector<std::string> cells(const BenchEntry& e) {
  const BenchRow& r = e.row;
  const int d = e.mean ? 3 : 0;
  return {num(r.agents, 0),
          num(r.actors, 0),
          num(r.initial_viewpoints, d),
          num(r.obstacle_density_pct, 2),
          num(r.actors_total_cost, 3),
          num(r.agents_total_cost, 3),
          num(r.nodes_expanded, d),
          num(r.tracking_accuracy_pct, 3),
          num(r.completion_time_s, 6)};
}

}  // namespace

std::string bench_csv(std::span<const BenchEntry> entries) {
  std::string out;
  for (std::size_t i = 0; i < kBenchColumns.size(); ++i) {
    out += kBenchColumns[i];
    out += i + 1 < kBenchColumns.size() ? "," : "\n";
  }
  for (const auto& e : entries) {
    const auto row = cells(e);
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += row[i];
      out += i + 1 < row.size() ? "," : "\n";
    }
  }
  return out;
}

std::string bench_markdown(std::span<const BenchEntry> entries) {
  std::string out =
      "| Agents | Actors | Initial Viewpoints | Obstacle Density (%) | Actors Total Cost | Agents Total Cost | "
      "Nodes Expanded | Tracking Accuracy (%) | Completion Time (s) | Row |\n"
      "|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& e : entries) {
    out += "|";
    for (const auto& c : cells(e)) out += " " + c + " |";
    out += e.mean ? " mean |\n" : " seed " + std::to_string(e.seed) + " |\n";
  }
  return out;
}

}  // namespace dronefilm
