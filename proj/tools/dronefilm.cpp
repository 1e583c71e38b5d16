// Command-line front end: gen, run, bench, render.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dronefilm/bench.hpp"
#include "dronefilm/render.hpp"
#include "dronefilm/scenario.hpp"
#include "dronefilm/sim.hpp"
#include "dronefilm/trace.hpp"

namespace fs = std::filesystem;
using namespace dronefilm;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kValidation = 2, kRuntime = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << bytes;
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct GenArgs {
  std::uint64_t seed = 1;
  int size = 20;
  double density = 0.0;
  int actors = 1;
  int agents = 1;
  int length = 30;
  int horizon = 5;
  int execute_steps = 1;
  double hysteresis = 0.0;
  StartPlacement starts = StartPlacement::kNearActors;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  ScenarioConfig cfg = generate_random_scenario({a.seed, a.size, a.size, a.density, a.actors, a.agents, a.length, a.starts});
  cfg.horizon_steps = a.horizon;
  cfg.execute_steps = a.execute_steps;
  cfg.hysteresis = a.hysteresis;
  validate(cfg);
  save_scenario(cfg, a.out);
  std::printf("seed=%llu size=%dx%d obstacles=%zu actors=%zu agents=%zu length=%d horizon=%d execute_steps=%d "
              "hysteresis=%g -> %s\n",
              static_cast<unsigned long long>(cfg.seed), cfg.map.width(), cfg.map.height(),
              cfg.map.obstacles().size(), cfg.actors.size(), cfg.agents.size(), cfg.run_length(),
              cfg.horizon_steps, cfg.execute_steps, cfg.hysteresis, a.out.c_str());
  return kOk;
}

struct RunArgs {
  std::string scenario;
  std::string trace_out;
  std::string metrics_out;
  bool no_timing = false;
};

int cmd_run(const RunArgs& a) {
  const ScenarioConfig cfg = load_scenario(a.scenario);
  RunResult result = run(cfg);
  if (a.no_timing) result.metrics.completion_time_s = 0.0;
  if (!a.trace_out.empty()) write_file(a.trace_out, trace_to_ndjson(result, cfg));
  const BenchRow row = bench_row(cfg, result.metrics);
  if (!a.metrics_out.empty()) {
    write_file(a.metrics_out, metrics_to_json(result.metrics, static_cast<int>(row.agents),
                                              static_cast<int>(row.actors), row.obstacle_density_pct));
  }
  const BenchEntry entry{row, false, cfg.seed, result.metrics};
  std::cout << bench_csv(std::span(&entry, 1));
  return kOk;
}

struct BenchArgs {
  std::vector<int> agents;
  std::vector<int> actors;
  std::vector<double> densities;
  int seeds = 1;
  int size = 20;
  int length = 30;
  std::uint64_t base_seed = 1;
  int threads = 0;
  std::string out_csv;
  bool markdown = false;
  bool no_timing = false;
};

int cmd_bench(const BenchArgs& a) {
  if (a.agents.empty() || a.actors.empty() || a.densities.empty()) throw UsageError("bench grid is empty");
  BenchConfig config;
  config.agents = a.agents;
  config.actors = a.actors;
  config.densities = a.densities;
  config.seeds_per_cell = a.seeds;
  config.size = a.size;
  config.run_length = a.length;
  config.base_seed = a.base_seed;
  config.threads = a.threads;
  config.record_timing = !a.no_timing;
  const auto entries = run_bench(config);
  const std::string csv = bench_csv(entries);
  if (!a.out_csv.empty()) {
    write_file(a.out_csv, csv);
  } else if (!a.markdown) {
    std::cout << csv;
  }
  if (a.markdown) std::cout << bench_markdown(entries);
  return kOk;
}

struct RenderArgs {
  std::string trace;
  std::string out_dir;
};

int cmd_render(const RenderArgs& a) {
  const ParsedTrace trace = parse_trace(read_file(a.trace));
  if (trace.frames.empty()) {
    std::cerr << "warning: trace has no coverage records; no frames written\n";
    return kOk;
  }
  if (!trace.has_world) throw TraceError(trace.record_count, "trace has no metric record with world data");
  fs::create_directories(a.out_dir);
  for (const auto& [t, svg] : render_trace(trace)) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%04d.svg", t);
    write_file(fs::path(a.out_dir) / name, svg);
  }
  std::printf("%zu frames -> %s\n", trace.frames.size(), a.out_dir.c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-drone filming planner: scenario generation, simulation, benchmarks, rendering"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a random scenario file");
  gen_cmd->add_option("--seed", gen.seed, "generator seed");
  gen_cmd->add_option("--size", gen.size, "grid width and height in cells")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--density", gen.density, "obstacle fraction in [0, 0.5]");
  gen_cmd->add_option("--actors", gen.actors, "number of actors");
  gen_cmd->add_option("--agents", gen.agents, "number of agents");
  gen_cmd->add_option("--length", gen.length, "timesteps per actor track");
  gen_cmd->add_option("--horizon", gen.horizon, "planning horizon in steps");
  gen_cmd->add_option("--execute-steps", gen.execute_steps, "steps executed per epoch");
  gen_cmd->add_option("--hysteresis", gen.hysteresis, "cost improvement required to swap assignments");
  gen_cmd->add_option("--starts", gen.starts, "agent start placement: near or uniform")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, StartPlacement>{{"near", StartPlacement::kNearActors},
                                                {"uniform", StartPlacement::kUniform}}));
  gen_cmd->add_option("--out", gen.out, "output scenario path")->required();

  RunArgs runa;
  auto* run_cmd = app.add_subcommand("run", "simulate a scenario");
  run_cmd->add_option("scenario", runa.scenario, "scenario file")->required();
  run_cmd->add_option("--trace-out", runa.trace_out, "NDJSON trace output path");
  run_cmd->add_option("--metrics-out", runa.metrics_out, "JSON metrics output path");
  run_cmd->add_flag("--no-timing", runa.no_timing, "report completion time as 0");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "sweep agents x actors x density and tabulate");
  bench_cmd->add_option("--agents", bench.agents, "agent counts")->required()->delimiter(',');
  bench_cmd->add_option("--actors", bench.actors, "actor counts")->required()->delimiter(',');
  bench_cmd->add_option("--densities", bench.densities, "obstacle fractions")->required()->delimiter(',');
  bench_cmd->add_option("--seeds", bench.seeds, "seeds per configuration")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--size", bench.size, "grid size")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--length", bench.length, "timesteps per run")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--base-seed", bench.base_seed, "first seed of every configuration");
  bench_cmd->add_option("--threads", bench.threads, "worker threads (0 = all cores)");
  bench_cmd->add_option("--out-csv", bench.out_csv, "CSV output path (stdout if omitted)");
  bench_cmd->add_flag("--markdown", bench.markdown, "print a markdown table to stdout");
  bench_cmd->add_flag("--no-timing", bench.no_timing, "report completion time as 0");

  RenderArgs render;
  auto* render_cmd = app.add_subcommand("render", "write one SVG per timestep of a trace");
  render_cmd->add_option("trace", render.trace, "NDJSON trace")->required();
  render_cmd->add_option("out_dir", render.out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen);
    if (*run_cmd) return cmd_run(runa);
    if (*bench_cmd) return cmd_bench(bench);
    if (*render_cmd) return cmd_render(render);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ScenarioError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const GenerationError& e) {
    std::cerr << "generation error: " << e.what() << "\n";
    return kValidation;
  } catch (const TraceError& e) {
    std::cerr << "trace error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kUsage;
}
