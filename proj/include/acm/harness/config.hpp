#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "acm/bufsim.hpp"
#include "acm/cost_model.hpp"
#include "acm/cpu_model.hpp"
#include "acm/disk_model.hpp"

namespace acm::harness {

/// Settings of the adaptive model. Unset scale_factor means "auto":
/// one cost unit per simulated sequential page fetch.
struct AcmSettings {
  double alpha = 0.3;
  std::optional<double> scale_factor;
  std::uint64_t min_observations = 3;
  std::size_t window_size = 512;
  std::size_t refit_every = 10;
  double epsilon_floor = 1e-6;
  std::optional<double> random_page_cost_default;  // defaults to the baseline value
  double ridge_lambda = 0.0;
};

struct WorkloadPhase {
  std::string name;
  std::size_t length = 0;
  std::map<std::string, double> mix;  // table id -> relative weight
  // Either an explicit list of selectivities or a log-uniform range.
  std::vector<double> selectivity_choices;
  double selectivity_min = 1.0;
  double selectivity_max = 1.0;
  double residual_min = 1.0;
  double residual_max = 1.0;
  double aggregate_probability = 0.0;
};

struct WorkloadConfig {
  std::uint64_t seed = 1;
  std::vector<WorkloadPhase> phases;
};

struct ExperimentConfig {
  std::vector<TableDef> tables;
  std::size_t cache_pages = 1024;
  TimingProfile timing;
  CostParams baseline;
  AcmSettings acm;
  WorkloadConfig workload;

  Catalog catalog() const;
  CpuModelConfig cpu_config() const;
  DiskModelConfig disk_config() const;
  double scale_factor() const;

  /// Throws ConfigError on any inconsistency.
  void validate() const;
};

/// Parses the JSON experiment config. Missing optional blocks keep their
/// defaults; unknown keys are rejected. Throws ConfigError.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);
WorkloadConfig parse_workload(const nlohmann::json& doc);

nlohmann::json to_json(const WorkloadConfig& workload);

}  // namespace acm::harness
