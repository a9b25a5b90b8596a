#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "acm/cpu_model.hpp"
#include "acm/disk_model.hpp"
#include "acm/harness/config.hpp"
#include "acm/harness/workload.hpp"
#include "acm/planner.hpp"

namespace acm::harness {

enum class Mode { Baseline, Acm };

std::string_view to_string(Mode mode) noexcept;
std::optional<Mode> parse_mode(std::string_view name) noexcept;

/// Parameters the adaptive model injects: CPU constants from the fitted
/// per-operator predictions, random_page_cost from the table's predicted
/// hit ratio, everything else from the baseline set.
class AdaptiveParams final : public ParamsSource {
 public:
  AdaptiveParams(const CostParams& baseline, const DiskModel& disk, const CpuModel& cpu)
      : baseline_(baseline), disk_(disk), cpu_(cpu) {}

  CostParams params_for(OperatorType type, std::string_view table_id) const override;

 private:
  CostParams baseline_;
  const DiskModel& disk_;
  const CpuModel& cpu_;
};

struct QueryOutcome {
  std::string label;
  std::string table_id;
  OperatorType access_path = OperatorType::SeqScan;
  bool aggregate = false;
  double estimated_cost = 0.0;
  double latency_ms = 0.0;
};

struct NodeSample {
  std::size_t query = 0;
  OperatorType op_type = OperatorType::SeqScan;
  std::string table_id;
  double cost = 0.0;
  double time_ms = 0.0;
};

/// Disk-side state around one query: what was injected before it ran and
/// what was observed after.
struct DiskTracePoint {
  std::size_t pass = 0;  // 0..warmup; the last pass is the measured one
  std::size_t query = 0;
  std::string table_id;
  std::uint64_t qc = 0;
  std::optional<double> predicted_hit_ratio;
  double random_page_cost = 0.0;
  std::optional<double> observed_hit_ratio;
};

/// One mode's measured pass plus the final model state.
struct ModeRun {
  Mode mode = Mode::Baseline;
  unsigned warmup = 0;
  std::vector<QueryOutcome> queries;
  std::vector<NodeSample> nodes;
  std::optional<double> correlation;  // absent when undefined
  std::vector<FitHistoryEntry> cpu_history;
  std::vector<DiskTracePoint> disk_trajectory;
  DiskModel disk;
  CpuModel cpu;

  double total_latency_ms() const noexcept;
  std::vector<CostTimePair> cost_time_pairs() const;
};

struct PlanFlip {
  std::size_t query = 0;
  std::string label;
  OperatorType baseline_path = OperatorType::SeqScan;
  OperatorType acm_path = OperatorType::SeqScan;
  double baseline_ms = 0.0;
  double acm_ms = 0.0;
};

struct RunReport {
  std::optional<ModeRun> baseline;
  std::optional<ModeRun> acm;
  std::vector<PlanFlip> flips;
};

/// Replays the trace `warmup` times to warm the cache (and, in acm mode,
/// the models), then once more for measurement. Each call starts from a
/// cold cache and fresh models.
ModeRun run_mode(const WorkloadTrace& trace, Mode mode, const ExperimentConfig& config, unsigned warmup);

RunReport replay(const WorkloadTrace& trace, Mode mode, const ExperimentConfig& config, unsigned warmup);

/// Both modes from the same seed and profile, plus the plan-flip list.
RunReport compare(const WorkloadTrace& trace, const ExperimentConfig& config, unsigned warmup);

/// Queries whose access path differs between the two measured passes.
std::vector<PlanFlip> plan_flips(const ModeRun& baseline, const ModeRun& acm);

}  // namespace acm::harness
