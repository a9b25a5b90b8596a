#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace acm {

/// Buffer statistics kept per table. Only the most recent hit ratio is
/// stored; prediction never looks further back.
struct TableBufferStats {
  std::string table_id;
  std::optional<double> last_hit_ratio;
  std::uint64_t observation_count = 0;
  std::uint64_t tc = 0;  // value of qc at this table's last access

  friend bool operator==(const TableBufferStats&, const TableBufferStats&) = default;
};

struct DiskModelConfig {
  double random_page_cost_default = 4.0;
  double seq_page_cost = 1.0;
  std::uint64_t min_observations = 3;

  void validate() const;

  friend bool operator==(const DiskModelConfig&, const DiskModelConfig&) = default;
};

/// (1 + g) / (1 + g^2) with g = qc - tc. Throws InvariantError if qc < tc.
double degradation_factor(std::uint64_t qc, std::uint64_t tc);

/// Blends the default random page cost toward the sequential cost by the
/// expected buffer residency: def * (1 - hit_ratio) + seq * hit_ratio.
double blend_random_page_cost(double random_page_cost_default, double seq_page_cost, double hit_ratio) noexcept;

/// Per-table hit-ratio tracker that prices random page fetches before each
/// query. Single writer; predictions are const and may be read from any
/// thread once writes are serialised externally.
class DiskModel {
 public:
  using TableMap = std::map<std::string, TableBufferStats, std::less<>>;

  explicit DiskModel(DiskModelConfig config = {});

  /// Rebuilds a model from a checkpoint. Throws InvariantError when the
  /// snapshot is inconsistent (tc > qc or a hit ratio outside [0, 1]).
  static DiskModel restore(DiskModelConfig config, std::uint64_t qc, TableMap tables);

  /// Records one table access. Every call advances qc and stamps the table's
  /// tc; an access that touched no pages keeps the previous hit ratio and
  /// does not count as an observation. Throws InputError on negative counts.
  void record_execution(std::string_view table_id, std::int64_t hit, std::int64_t read);

  /// R(q_t) * D(qc, tc), or nullopt for unknown tables and tables still
  /// below min_observations.
  std::optional<double> predict_hit_ratio(std::string_view table_id) const;

  /// Random page cost to inject for the next scan of this table. Falls back
  /// to the configured default when no prediction is available.
  double random_page_cost_for(std::string_view table_id) const;

  std::uint64_t qc() const noexcept { return qc_; }
  const DiskModelConfig& config() const noexcept { return config_; }
  const TableMap& tables() const noexcept { return tables_; }
  const TableBufferStats* find(std::string_view table_id) const;

  friend bool operator==(const DiskModel&, const DiskModel&) = default;

 private:
  DiskModelConfig config_;
  std::uint64_t qc_ = 0;
  TableMap tables_;
};

}  // namespace acm
