// acm: workload generation, replay and reporting for the adaptive cost model.
//
// Exit codes: 0 success, 1 configuration/usage error, 2 runtime error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "acm/errors.hpp"
#include "acm/harness/config.hpp"
#include "acm/harness/replay.hpp"
#include "acm/harness/report.hpp"
#include "acm/harness/workload.hpp"
#include "acm/oracle/normal_equations.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

void print_written(const std::vector<std::filesystem::path>& files) {
  for (const auto& f : files) {
    std::cout << "wrote " << f.string() << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace acm;
  using namespace acm::harness;

  CLI::App app{"Adaptive cost model experiments on the buffer-cache simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string trace_path;
  std::string profile_path;
  std::string out_path;
  std::string mode_name;
  std::string rows_path;
  std::uint64_t seed = 1;
  unsigned warmup = 2;
  double scale_factor = 1.0;

  auto* gen = app.add_subcommand("gen", "Generate a workload trace from a config file");
  gen->add_option("--config", config_path, "Experiment config (JSON)")->required();
  auto* seed_opt = gen->add_option("--seed", seed, "Generator seed (default: workload.seed from the config)");
  gen->add_option("--out", out_path, "Output trace (JSON lines)")->required();

  auto* replay_cmd = app.add_subcommand("replay", "Replay a trace in one mode and write a report");
  replay_cmd->add_option("--trace", trace_path, "Workload trace (JSON lines)")->required();
  replay_cmd->add_option("--mode", mode_name)->required()->check(CLI::IsMember({"baseline", "acm"}));
  replay_cmd->add_option("--profile", profile_path, "Experiment config (JSON)")->required();
  replay_cmd->add_option("--warmup", warmup, "Trace passes before measurement")->capture_default_str();
  replay_cmd->add_option("--out", out_path, "Report directory")->required();

  auto* compare_cmd = app.add_subcommand("compare", "Replay a trace in both modes and write a combined report");
  compare_cmd->add_option("--trace", trace_path, "Workload trace (JSON lines)")->required();
  compare_cmd->add_option("--profile", profile_path, "Experiment config (JSON)")->required();
  compare_cmd->add_option("--warmup", warmup, "Trace passes before measurement")->capture_default_str();
  compare_cmd->add_option("--out", out_path, "Report directory")->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "Reference solvers");
  oracle_cmd->require_subcommand(1);
  auto* lsq = oracle_cmd->add_subcommand("lsq", "Solve CPU-parameter least squares via normal equations");
  lsq->add_option("--in", rows_path, "CSV with header n_t,n_o,n_i,s,time")->required();
  lsq->add_option("--scale-factor", scale_factor, "Cost units per millisecond")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*gen) {
      const ExperimentConfig config = load_config(config_path);
      const std::uint64_t effective_seed = *seed_opt ? seed : config.workload.seed;
      const WorkloadTrace trace = generate_workload(config.workload, config.catalog(), effective_seed);
      save_trace(out_path, trace);
      std::cout << "wrote " << trace.entries.size() << " queries to " << out_path << '\n';
    } else if (*replay_cmd) {
      const ExperimentConfig config = load_config(profile_path);
      const WorkloadTrace trace = load_trace(trace_path);
      const RunReport report = replay(trace, *parse_mode(mode_name), config, warmup);
      print_written(write_report(report, out_path));
      std::cout << render_summary(report);
    } else if (*compare_cmd) {
      const ExperimentConfig config = load_config(profile_path);
      const WorkloadTrace trace = load_trace(trace_path);
      const RunReport report = compare(trace, config, warmup);
      print_written(write_report(report, out_path));
      std::cout << render_summary(report);
    } else if (*lsq) {
      std::ifstream in(rows_path);
      if (!in) {
        throw ConfigError(rows_path + ": cannot open");
      }
      const auto rows = oracle::read_rows_csv(in);
      const auto solution = oracle::solve_normal_equations(rows, scale_factor);
      const char* names[] = {"c_t", "c_o", "c_i"};
      for (std::size_t i = 0; i < solution.size(); ++i) {
        std::cout << names[i] << ',';
        if (solution[i]) {
          char buf[64];
          std::snprintf(buf, sizeof buf, "%.17g", *solution[i]);
          std::cout << buf;
        }
        std::cout << '\n';
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
