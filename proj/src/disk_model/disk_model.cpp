#include "acm/disk_model.hpp"

#include <cmath>

#include "acm/errors.hpp"

namespace acm {

void DiskModelConfig::validate() const {
  if (!std::isfinite(seq_page_cost) || seq_page_cost <= 0.0) {
    throw ConfigError("seq_page_cost must be finite and > 0");
  }
  if (!std::isfinite(random_page_cost_default) || random_page_cost_default < seq_page_cost) {
    throw ConfigError("random_page_cost_default must be finite and >= seq_page_cost");
  }
  if (min_observations == 0) {
    throw ConfigError("min_observations must be positive");
  }
}

double degradation_factor(std::uint64_t qc, std::uint64_t tc) {
  if (qc < tc) {
    throw InvariantError("degradation factor: qc (" + std::to_string(qc) + ") < tc (" + std::to_string(tc) + ")");
  }
  // gap^2 stays finite in double for any 64-bit gap.
  const double gap = static_cast<double>(qc - tc);
  return (1.0 + gap) / (1.0 + gap * gap);
}

double blend_random_page_cost(double random_page_cost_default, double seq_page_cost, double hit_ratio) noexcept {
  return random_page_cost_default * (1.0 - hit_ratio) + seq_page_cost * hit_ratio;
}

DiskModel::DiskModel(DiskModelConfig config) : config_(config) { config_.validate(); }

DiskModel DiskModel::restore(DiskModelConfig config, std::uint64_t qc, TableMap tables) {
  DiskModel model(config);
  for (const auto& [id, stats] : tables) {
    if (stats.tc > qc) {
      throw InvariantError("checkpoint: table " + id + " has tc > qc");
    }
    if (stats.last_hit_ratio && !(*stats.last_hit_ratio >= 0.0 && *stats.last_hit_ratio <= 1.0)) {
      throw InvariantError("checkpoint: table " + id + " has hit ratio outside [0, 1]");
    }
    if (stats.table_id != id) {
      throw InvariantError("checkpoint: table key " + id + " does not match its stats");
    }
  }
  model.qc_ = qc;
  model.tables_ = std::move(tables);
  return model;
}

void DiskModel::record_execution(std::string_view table_id, std::int64_t hit, std::int64_t read) {
  if (hit < 0 || read < 0) {
    throw InputError("record_execution: negative page counter for table " + std::string(table_id));
  }
  auto it = tables_.find(table_id);
  if (it == tables_.end()) {
    it = tables_.emplace(std::string(table_id), TableBufferStats{.table_id = std::string(table_id)}).first;
  }
  ++qc_;
  auto& stats = it->second;
  stats.tc = qc_;
  const std::int64_t total = hit + read;
  if (total == 0) {
    return;
  }
  stats.last_hit_ratio = static_cast<double>(hit) / static_cast<double>(total);
  ++stats.observation_count;
}

const TableBufferStats* DiskModel::find(std::string_view table_id) const {
  auto it = tables_.find(table_id);
  return it == tables_.end() ? nullptr : &it->second;
}

std::optional<double> DiskModel::predict_hit_ratio(std::string_view table_id) const {
  const TableBufferStats* stats = find(table_id);
  if (stats == nullptr || !stats->last_hit_ratio || stats->observation_count < config_.min_observations) {
    return std::nullopt;
  }
  return *stats->last_hit_ratio * degradation_factor(qc_, stats->tc);
}

double DiskModel::random_page_cost_for(std::string_view table_id) const {
  const double predicted = predict_hit_ratio(table_id).value_or(0.0);
  return blend_random_page_cost(config_.random_page_cost_default, config_.seq_page_cost, predicted);
}

}  // namespace acm
