#include "acm/harness/replay.hpp"

#include "acm/errors.hpp"
#include "acm/harness/stats.hpp"

namespace acm::harness {
namespace {

struct ExecutedNode {
  const PlanNode* node;
  OperatorExecution exec;
};

OperatorExecution execute_node(PlanNode& node, Simulator& sim, const QuerySpec& query,
                               std::vector<ExecutedNode>& executed) {
  const TableDef& table = sim.catalog().at(node.table_id);
  const std::uint32_t ordinal = sim.catalog().ordinal(node.table_id);
  OperatorExecution exec;
  switch (node.op_type) {
    case OperatorType::SeqScan:
      exec = execute_seq_scan(sim.cache(), ordinal, table,
                              emitted_rows(table, query.selectivity, query.residual_selectivity), sim.profile(),
                              sim.rng());
      break;
    case OperatorType::IndexScan:
      exec = execute_index_scan(sim.cache(), ordinal, table, query.selectivity, query.residual_selectivity,
                                sim.profile(), sim.rng());
      break;
    case OperatorType::Agg: {
      if (node.children.size() != 1) {
        throw InputError("aggregate node expects exactly one input");
      }
      const OperatorExecution input = execute_node(node.children.front(), sim, query, executed);
      exec = execute_agg(input.rows_out, group_count(table, input.rows_out), sim.profile(), sim.rng());
      break;
    }
  }
  node.actual_time_ms = exec.time_ms;
  executed.push_back({&node, exec});
  return exec;
}

/// Disk term of a training row: the blended random page cost evaluated at the hit ratio this
/// operator actually saw, applied to the pages it actually touched.
double realized_disk_cost(const OperatorExecution& exec, const DiskModelConfig& disk) {
  const std::uint64_t touched = exec.hits + exec.reads;
  const double hit_ratio = touched == 0 ? 0.0 : static_cast<double>(exec.hits) / static_cast<double>(touched);
  const double random_page_cost =
      blend_random_page_cost(disk.random_page_cost_default, disk.seq_page_cost, hit_ratio);
  return disk.seq_page_cost * static_cast<double>(exec.counts.n_seq_pages) +
         random_page_cost * static_cast<double>(exec.counts.n_random_pages);
}

}  // namespace

std::string_view to_string(Mode mode) noexcept { return mode == Mode::Baseline ? "baseline" : "acm"; }

std::optional<Mode> parse_mode(std::string_view name) noexcept {
  if (name == "baseline") {
    return Mode::Baseline;
  }
  if (name == "acm") {
    return Mode::Acm;
  }
  return std::nullopt;
}

CostParams AdaptiveParams::params_for(OperatorType type, std::string_view table_id) const {
  CostParams params = baseline_;
  const CpuParams cpu = cpu_.current_params(type);
  params.cpu_tuple_cost = cpu.cpu_tuple_cost;
  params.cpu_operator_cost = cpu.cpu_operator_cost;
  params.cpu_index_tuple_cost = cpu.cpu_index_tuple_cost;
  params.random_page_cost = disk_.random_page_cost_for(table_id);
  return params;
}

double ModeRun::total_latency_ms() const noexcept {
  double total = 0.0;
  for (const auto& q : queries) {
    total += q.latency_ms;
  }
  return total;
}

std::vector<CostTimePair> ModeRun::cost_time_pairs() const {
  std::vector<CostTimePair> pairs;
  pairs.reserve(nodes.size());
  for (const auto& n : nodes) {
    pairs.push_back({n.cost, n.time_ms});
  }
  return pairs;
}

ModeRun run_mode(const WorkloadTrace& trace, Mode mode, const ExperimentConfig& config, unsigned warmup) {
  config.validate();
  Simulator sim(config.catalog(), config.cache_pages, config.timing);
  const DiskModelConfig disk_config = config.disk_config();
  DiskModel disk(disk_config);
  CpuModel cpu(config.cpu_config());
  const FixedParams fixed(config.baseline);
  const AdaptiveParams adaptive(config.baseline, disk, cpu);
  const ParamsSource& source = mode == Mode::Acm ? static_cast<const ParamsSource&>(adaptive) : fixed;

  std::vector<QueryOutcome> queries;
  std::vector<NodeSample> nodes;
  std::vector<DiskTracePoint> trajectory;

  for (unsigned pass = 0; pass <= warmup; ++pass) {
    const bool measured = pass == warmup;
    for (std::size_t i = 0; i < trace.entries.size(); ++i) {
      const auto& entry = trace.entries[i];
      const QuerySpec& query = entry.query;

      DiskTracePoint point{.pass = pass, .query = i, .table_id = query.table_id, .qc = disk.qc()};
      if (mode == Mode::Acm) {
        point.predicted_hit_ratio = disk.predict_hit_ratio(query.table_id);
      }
      point.random_page_cost = source.params_for(OperatorType::IndexScan, query.table_id).random_page_cost;

      PlanNode plan = enumerate_and_choose(query, sim.catalog(), source);
      std::vector<ExecutedNode> executed;
      execute_node(plan, sim, query, executed);

      std::uint64_t hits = 0;
      std::uint64_t reads = 0;
      double latency = 0.0;
      for (const auto& [node, exec] : executed) {
        hits += exec.hits;
        reads += exec.reads;
        latency += exec.time_ms;
      }
      if (hits + reads > 0) {
        point.observed_hit_ratio = static_cast<double>(hits) / static_cast<double>(hits + reads);
      }

      if (mode == Mode::Acm) {
        disk.record_execution(query.table_id, static_cast<std::int64_t>(hits), static_cast<std::int64_t>(reads));
        for (const auto& [node, exec] : executed) {
          cpu.record({.op_type = exec.op_type,
                      .n_tuples = exec.counts.n_tuples,
                      .n_operations = exec.counts.n_operations,
                      .n_index_entries = exec.counts.n_index_entries,
                      .disk_cost = realized_disk_cost(exec, disk_config),
                      .exec_time_ms = exec.time_ms});
        }
      }
      trajectory.push_back(std::move(point));

      if (measured) {
        double estimated = 0.0;
        for (const PlanNode* n : flatten(&plan)) {
          estimated += n->estimated_cost;
        }
        queries.push_back({.label = entry.label,
                           .table_id = query.table_id,
                           .access_path = access_path(plan),
                           .aggregate = query.aggregate,
                           .estimated_cost = estimated,
                           .latency_ms = latency});
        for (const PlanNode* n : flatten(&plan)) {
          nodes.push_back({.query = i,
                           .op_type = n->op_type,
                           .table_id = n->table_id,
                           .cost = n->estimated_cost,
                           .time_ms = n->actual_time_ms.value_or(0.0)});
        }
      }
    }
  }

  ModeRun run{.mode = mode,
              .warmup = warmup,
              .queries = std::move(queries),
              .nodes = std::move(nodes),
              .correlation = std::nullopt,
              .cpu_history = cpu.history(),
              .disk_trajectory = std::move(trajectory),
              .disk = disk,
              .cpu = cpu};
  try {
    const auto pairs = run.cost_time_pairs();
    run.correlation = pearson(pairs);
  } catch (const UndefinedCorrelationError&) {
    run.correlation = std::nullopt;
  }
  return run;
}

RunReport replay(const WorkloadTrace& trace, Mode mode, const ExperimentConfig& config, unsigned warmup) {
  RunReport report;
  if (mode == Mode::Baseline) {
    report.baseline = run_mode(trace, mode, config, warmup);
  } else {
    report.acm = run_mode(trace, mode, config, warmup);
  }
  return report;
}

RunReport compare(const WorkloadTrace& trace, const ExperimentConfig& config, unsigned warmup) {
  RunReport report;
  report.baseline = run_mode(trace, Mode::Baseline, config, warmup);
  report.acm = run_mode(trace, Mode::Acm, config, warmup);
  report.flips = plan_flips(*report.baseline, *report.acm);
  return report;
}

std::vector<PlanFlip> plan_flips(const ModeRun& baseline, const ModeRun& acm) {
  if (baseline.queries.size() != acm.queries.size()) {
    throw InputError("plan_flips: runs cover different numbers of queries");
  }
  std::vector<PlanFlip> flips;
  for (std::size_t i = 0; i < baseline.queries.size(); ++i) {
    const auto& b = baseline.queries[i];
    const auto& a = acm.queries[i];
    if (b.access_path != a.access_path) {
      flips.push_back({.query = i,
                       .label = b.label,
                       .baseline_path = b.access_path,
                       .acm_path = a.access_path,
                       .baseline_ms = b.latency_ms,
                       .acm_ms = a.latency_ms});
    }
  }
  return flips;
}

}  // namespace acm::harness
