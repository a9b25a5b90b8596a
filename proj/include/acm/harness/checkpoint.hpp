#pragma once

#include "json.hpp"

#include "acm/cpu_model.hpp"
#include "acm/disk_model.hpp"

namespace acm::harness {

/// Model snapshots for resuming a replay. Parsing throws ConfigError on
/// malformed documents and InvariantError on inconsistent state.
nlohmann::json checkpoint(const DiskModel& model);
DiskModel restore_disk_model(const nlohmann::json& doc);

/// Smoothed predictions only; observation windows are not persisted.
nlohmann::json checkpoint(const CpuModel& model);
CpuModel restore_cpu_model(const nlohmann::json& doc);

}  // namespace acm::harness
