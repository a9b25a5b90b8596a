#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "acm/harness/replay.hpp"

namespace acm::harness {

/// Writes latency.csv, correlation.csv, nodes.csv, params_trajectory.csv,
/// scatter_cost_time.svg and summary.txt into out_dir (created if needed).
/// Returns the written paths. Throws IoError naming the failing path.
std::vector<std::filesystem::path> write_report(const RunReport& report, const std::filesystem::path& out_dir);

/// Text of summary.txt.
std::string render_summary(const RunReport& report);

/// Two-panel cost/time scatter (baseline left, acm right).
std::string render_scatter_svg(const RunReport& report);

}  // namespace acm::harness
