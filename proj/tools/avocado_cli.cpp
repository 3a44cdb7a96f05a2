#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "avocado/batch.hpp"
#include "avocado/io/config.hpp"
#include "avocado/io/errors.hpp"
#include "avocado/io/outputs.hpp"
#include "avocado/io/svg.hpp"
#include "avocado/io/sweep.hpp"
#include "avocado/simulator.hpp"

namespace fs = std::filesystem;
using namespace avocado;
using namespace avocado::io;

namespace {

struct RunArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out = "out";
  std::string variant;
  int threads = 1;
  bool no_timing = false;
  bool no_svg = false;
};

struct SweepArgs {
  std::string config;
  std::string out = "sweep_out";
  int threads = 1;
  bool no_timing = false;
};

struct PlotArgs {
  std::string input;
  std::string out;
};

std::string describe(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string("n/a");
}

int cmd_run(const RunArgs& args) {
  nlohmann::json doc = args.config.empty() ? nlohmann::json{{"schema_version", kSchemaVersion}}
                                           : read_json_file(args.config);
  if (doc.is_object()) {
    if (args.seed) doc["seed"] = *args.seed;
    if (!args.variant.empty()) doc["variant"] = args.variant;
  }
  const ScenarioSpec spec = spec_from_json(doc);

  EpisodeResult first;
  const BatchResult batch = run_batch(spec, args.threads, &first, !args.no_timing);

  const fs::path out(args.out);
  write_outputs(out, {&first, &batch, !args.no_timing});
  write_text_file(out / "config.json", spec_to_json(spec).dump(2) + "\n");
  if (!args.no_svg && !first.trajectory.empty()) {
    PlotData plot;
    plot.trajectory = first.trajectory;
    for (const auto& a : generate_world(spec, run_seed(spec.seed, 0))) {
      plot.goals[a.id] = a.goal;
      plot.radii[a.id] = a.radius;
    }
    write_text_file(out / "trajectories.svg", render_svg(plot));
  }

  std::cout << "runs=" << batch.runs << " success_rate=" << describe(batch.success_rate)
            << " mean_time_to_goal_s=" << describe(batch.mean_time_to_goal)
            << " collisions=" << batch.collisions << " out=" << out.string() << "\n";
  return kExitOk;
}

int cmd_sweep(const SweepArgs& args) {
  const SweepConfig cfg = sweep_from_json(read_json_file(args.config));
  const SweepResult result = run_sweep(cfg, args.threads);
  const fs::path out(args.out);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw IoError("cannot create " + out.string() + ": " + ec.message());
  write_text_file(out / "sweep.csv", sweep_csv(result, !args.no_timing));
  write_text_file(out / "sweep_opinions.csv", sweep_traces_csv(result));

  int failed = 0;
  for (const auto& row : result.rows) {
    if (!row.result) {
      ++failed;
      std::cerr << "cell failed (" << row.kind << " " << row.variant << " " << row.family
                << " N=" << row.n_agents << "): " << row.error << "\n";
    }
  }
  std::cout << "rows=" << result.rows.size() << " failed=" << failed << " out=" << out.string()
            << "\n";
  return failed == 0 ? kExitOk : kExitConfig;
}

int cmd_plot(const PlotArgs& args) {
  const fs::path dir(args.input);
  PlotData plot;
  plot.trajectory = parse_trajectories_csv(read_text_file(dir / "trajectories.csv"));
  if (fs::exists(dir / "config.json")) {
    const ScenarioSpec spec = load_config(dir / "config.json");
    for (const auto& a : generate_world(spec, run_seed(spec.seed, 0))) {
      plot.goals[a.id] = a.goal;
      plot.radii[a.id] = a.radius;
    }
  }
  const fs::path out = args.out.empty() ? dir / "trajectories.svg" : fs::path(args.out);
  write_text_file(out, render_svg(plot));
  std::cout << "wrote " << out.string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive collision avoidance planner and benchmark simulator"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run a scenario and write trajectories, opinions and metrics");
  run->add_option("--config", run_args.config, "Scenario configuration (JSON)");
  run->add_option("--seed", run_args.seed, "Master seed, overrides the configuration");
  run->add_option("--out", run_args.out, "Output directory")->capture_default_str();
  run->add_option("--variant", run_args.variant, "AVOCADO_1..AVOCADO_4 or ORCA");
  run->add_option("--threads", run_args.threads, "Worker threads")->check(CLI::PositiveNumber);
  run->add_flag("--no-timing", run_args.no_timing, "Write null timing so outputs are reproducible");
  run->add_flag("--no-svg", run_args.no_svg, "Skip the trajectory plot");

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Run a parameter grid and write sweep.csv");
  sweep->add_option("--config", sweep_args.config, "Sweep configuration (JSON)")->required();
  sweep->add_option("--out", sweep_args.out, "Output directory")->capture_default_str();
  sweep->add_option("--threads", sweep_args.threads, "Worker threads")->check(CLI::PositiveNumber);
  sweep->add_flag("--no-timing", sweep_args.no_timing, "Leave planner timing empty");

  PlotArgs plot_args;
  auto* plot = app.add_subcommand("plot", "Render trajectories.csv of a run directory as SVG");
  plot->add_option("--input", plot_args.input, "Run output directory")->required();
  plot->add_option("--out", plot_args.out, "SVG path (default: <input>/trajectories.svg)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*run) return cmd_run(run_args);
    if (*sweep) return cmd_sweep(sweep_args);
    if (*plot) return cmd_plot(plot_args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
