#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "acm/bufsim.hpp"
#include "acm/harness/config.hpp"
#include "acm/planner.hpp"

namespace acm::harness {

inline constexpr int kTraceFormatVersion = 1;

struct TraceEntry {
  std::string label;
  QuerySpec query;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

/// Queries in replay order plus how they were generated.
struct WorkloadTrace {
  std::uint64_t seed = 0;
  nlohmann::json generator = nlohmann::json::object();
  std::vector<TraceEntry> entries;

  bool operator==(const WorkloadTrace& other) const {
    return seed == other.seed && generator == other.generator && entries == other.entries;
  }
};

/// Deterministic in (config, seed). Phases are emitted in order. Throws
/// ConfigError for invalid mix weights or references to unknown tables.
WorkloadTrace generate_workload(const WorkloadConfig& config, const Catalog& catalog, std::uint64_t seed);

/// JSON lines: a versioned header object, then one object per query.
void write_trace(std::ostream& out, const WorkloadTrace& trace);
WorkloadTrace read_trace(std::istream& in);
void save_trace(const std::filesystem::path& path, const WorkloadTrace& trace);
WorkloadTrace load_trace(const std::filesystem::path& path);

}  // namespace acm::harness
