#include "acm/harness/workload.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "acm/errors.hpp"

namespace acm::harness {
namespace {

using nlohmann::json;

void validate_phase(const WorkloadPhase& phase, const Catalog& catalog) {
  const std::string where = "workload phase '" + phase.name + "'";
  if (phase.length == 0) {
    return;
  }
  double total = 0.0;
  for (const auto& [table, weight] : phase.mix) {
    if (!std::isfinite(weight) || weight < 0.0) {
      throw ConfigError(where + ": invalid mix weight for " + table);
    }
    if (catalog.find(table) == nullptr) {
      throw ConfigError(where + ": mix names unknown table " + table);
    }
    total += weight;
  }
  if (!(total > 0.0)) {
    throw ConfigError(where + ": invalid mix weights (empty or all zero)");
  }
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  for (double s : phase.selectivity_choices) {
    if (!in_unit(s)) {
      throw ConfigError(where + ": selectivity choice outside [0, 1]");
    }
  }
  if (phase.selectivity_choices.empty()) {
    if (!in_unit(phase.selectivity_min) || !in_unit(phase.selectivity_max) ||
        phase.selectivity_min > phase.selectivity_max) {
      throw ConfigError(where + ": selectivity range must satisfy 0 <= min <= max <= 1");
    }
    if (phase.selectivity_min == 0.0 && phase.selectivity_max > 0.0) {
      throw ConfigError(where + ": log-uniform selectivity range needs min > 0");
    }
  }
  if (!in_unit(phase.residual_min) || !in_unit(phase.residual_max) || phase.residual_min > phase.residual_max) {
    throw ConfigError(where + ": residual range must satisfy 0 <= min <= max <= 1");
  }
  if (!in_unit(phase.aggregate_probability)) {
    throw ConfigError(where + ": aggregate_probability outside [0, 1]");
  }
}

std::string make_label(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "q%04zu", index);
  return buf;
}

}  // namespace

WorkloadTrace generate_workload(const WorkloadConfig& config, const Catalog& catalog, std::uint64_t seed) {
  for (const auto& phase : config.phases) {
    validate_phase(phase, catalog);
  }
  WorkloadConfig recorded = config;
  recorded.seed = seed;
  WorkloadTrace trace{.seed = seed, .generator = to_json(recorded)};

  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t index = 0;
  for (const auto& phase : config.phases) {
    if (phase.length == 0) {
      continue;
    }
    std::vector<std::string> names;
    std::vector<double> weights;
    for (const auto& [table, weight] : phase.mix) {
      names.push_back(table);
      weights.push_back(weight);
    }
    std::discrete_distribution<std::size_t> pick_table(weights.begin(), weights.end());

    for (std::size_t i = 0; i < phase.length; ++i) {
      QuerySpec q;
      q.table_id = names[pick_table(rng)];
      if (!phase.selectivity_choices.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, phase.selectivity_choices.size() - 1);
        q.selectivity = phase.selectivity_choices[pick(rng)];
      } else if (phase.selectivity_min == phase.selectivity_max) {
        q.selectivity = phase.selectivity_min;
      } else {
        const double lo = std::log(phase.selectivity_min);
        const double hi = std::log(phase.selectivity_max);
        q.selectivity = std::exp(lo + (hi - lo) * unit(rng));
      }
      q.residual_selectivity = phase.residual_min + (phase.residual_max - phase.residual_min) * unit(rng);
      q.aggregate = unit(rng) < phase.aggregate_probability;
      trace.entries.push_back({make_label(++index), std::move(q)});
    }
  }
  return trace;
}

void write_trace(std::ostream& out, const WorkloadTrace& trace) {
  json header{{"format", "acm-trace"},
              {"version", kTraceFormatVersion},
              {"seed", trace.seed},
              {"queries", trace.entries.size()},
              {"generator", trace.generator}};
  out << header.dump() << '\n';
  for (const auto& entry : trace.entries) {
    json line{{"label", entry.label},
              {"table", entry.query.table_id},
              {"selectivity", entry.query.selectivity},
              {"residual_selectivity", entry.query.residual_selectivity},
              {"aggregate", entry.query.aggregate}};
    out << line.dump() << '\n';
  }
}

WorkloadTrace read_trace(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto parse = [&](const std::string& text) {
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError("trace line " + std::to_string(line_no) + ": " + e.what());
    }
  };

  if (!std::getline(in, line)) {
    throw ConfigError("trace: missing header line");
  }
  ++line_no;
  const json header = parse(line);
  if (!header.is_object() || header.value("format", "") != "acm-trace") {
    throw ConfigError("trace: header is not an acm-trace header");
  }
  if (header.value("version", -1) != kTraceFormatVersion) {
    throw ConfigError("trace: unsupported version " + header.value("version", json()).dump());
  }
  WorkloadTrace trace;
  trace.seed = header.value("seed", std::uint64_t{0});
  trace.generator = header.value("generator", json::object());

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    const json rec = parse(line);
    try {
      TraceEntry entry;
      entry.label = rec.at("label").get<std::string>();
      entry.query.table_id = rec.at("table").get<std::string>();
      entry.query.selectivity = rec.at("selectivity").get<double>();
      entry.query.residual_selectivity = rec.value("residual_selectivity", 1.0);
      entry.query.aggregate = rec.value("aggregate", false);
      entry.query.validate();
      trace.entries.push_back(std::move(entry));
    } catch (const json::exception& e) {
      throw ConfigError("trace line " + std::to_string(line_no) + ": " + e.what());
    } catch (const InputError& e) {
      throw ConfigError("trace line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (header.contains("queries") && header.at("queries").get<std::size_t>() != trace.entries.size()) {
    throw ConfigError("trace: header announces " + header.at("queries").dump() + " queries, found " +
                      std::to_string(trace.entries.size()));
  }
  return trace;
}

void save_trace(const std::filesystem::path& path, const WorkloadTrace& trace) {
  std::ofstream out(path);
  if (!out) {
    throw IoError(path.string(), "cannot open for writing");
  }
  write_trace(out, trace);
  if (!out) {
    throw IoError(path.string(), "write failed");
  }
}

WorkloadTrace load_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(path.string() + ": cannot open trace");
  }
  return read_trace(in);
}

}  // namespace acm::harness
