#include "acm/harness/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "acm/errors.hpp"

namespace acm::harness {
namespace {

using nlohmann::json;

void require_object(const json& doc, const std::string& where) {
  if (!doc.is_object()) {
    throw ConfigError(where + ": expected an object");
  }
}

void reject_unknown(const json& doc, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : doc.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
}

template <typename T>
T get(const json& doc, const std::string& key, const std::string& where) {
  if (!doc.contains(key)) {
    throw ConfigError(where + ": missing key '" + key + "'");
  }
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

template <typename T>
void get_optional(const json& doc, const std::string& key, const std::string& where, T& out) {
  if (doc.contains(key)) {
    out = get<T>(doc, key, where);
  }
}

TableDef parse_table(const json& doc, std::size_t i) {
  const std::string where = "tables[" + std::to_string(i) + "]";
  require_object(doc, where);
  reject_unknown(doc, {"id", "pages", "tuples_per_page", "has_index", "group_keys"}, where);
  TableDef table;
  table.table_id = get<std::string>(doc, "id", where);
  table.n_pages = get<std::uint64_t>(doc, "pages", where);
  table.tuples_per_page = get<std::uint64_t>(doc, "tuples_per_page", where);
  get_optional(doc, "has_index", where, table.has_index);
  get_optional(doc, "group_keys", where, table.group_keys);
  return table;
}

TimingProfile parse_timing(const json& doc) {
  const std::string where = "timing";
  require_object(doc, where);
  reject_unknown(doc,
                 {"t_seq_page_ms", "t_rand_page_ms", "t_hit_page_ms", "t_tuple_ms", "t_op_ms", "t_index_entry_ms",
                  "noise_sigma", "seed"},
                 where);
  TimingProfile p;
  get_optional(doc, "t_seq_page_ms", where, p.t_seq_page_ms);
  get_optional(doc, "t_rand_page_ms", where, p.t_rand_page_ms);
  get_optional(doc, "t_hit_page_ms", where, p.t_hit_page_ms);
  get_optional(doc, "t_tuple_ms", where, p.t_tuple_ms);
  get_optional(doc, "t_op_ms", where, p.t_op_ms);
  get_optional(doc, "t_index_entry_ms", where, p.t_index_entry_ms);
  get_optional(doc, "noise_sigma", where, p.noise_sigma);
  get_optional(doc, "seed", where, p.seed);
  return p;
}

CostParams parse_cost_params(const json& doc) {
  const std::string where = "baseline";
  require_object(doc, where);
  reject_unknown(doc,
                 {"cpu_tuple_cost", "cpu_operator_cost", "cpu_index_tuple_cost", "seq_page_cost", "random_page_cost"},
                 where);
  CostParams p;
  get_optional(doc, "cpu_tuple_cost", where, p.cpu_tuple_cost);
  get_optional(doc, "cpu_operator_cost", where, p.cpu_operator_cost);
  get_optional(doc, "cpu_index_tuple_cost", where, p.cpu_index_tuple_cost);
  get_optional(doc, "seq_page_cost", where, p.seq_page_cost);
  get_optional(doc, "random_page_cost", where, p.random_page_cost);
  return p;
}

AcmSettings parse_acm(const json& doc) {
  const std::string where = "acm";
  require_object(doc, where);
  reject_unknown(doc,
                 {"alpha", "scale_factor", "min_observations", "window_size", "refit_every", "epsilon_floor",
                  "random_page_cost_default", "ridge_lambda"},
                 where);
  AcmSettings s;
  get_optional(doc, "alpha", where, s.alpha);
  if (doc.contains("scale_factor")) {
    const auto& sf = doc.at("scale_factor");
    if (sf.is_string()) {
      if (sf.get<std::string>() != "auto") {
        throw ConfigError("acm.scale_factor: expected a number or \"auto\"");
      }
    } else {
      s.scale_factor = get<double>(doc, "scale_factor", where);
    }
  }
  get_optional(doc, "min_observations", where, s.min_observations);
  get_optional(doc, "window_size", where, s.window_size);
  get_optional(doc, "refit_every", where, s.refit_every);
  get_optional(doc, "epsilon_floor", where, s.epsilon_floor);
  if (doc.contains("random_page_cost_default")) {
    s.random_page_cost_default = get<double>(doc, "random_page_cost_default", where);
  }
  get_optional(doc, "ridge_lambda", where, s.ridge_lambda);
  return s;
}

WorkloadPhase parse_phase(const json& doc, const std::string& where) {
  require_object(doc, where);
  reject_unknown(doc, {"name", "length", "mix", "selectivity", "residual", "aggregate_probability"}, where);
  WorkloadPhase phase;
  get_optional(doc, "name", where, phase.name);
  phase.length = get<std::size_t>(doc, "length", where);
  phase.mix = get<std::map<std::string, double>>(doc, "mix", where);
  if (doc.contains("selectivity")) {
    const auto& sel = doc.at("selectivity");
    if (sel.is_number()) {
      phase.selectivity_min = phase.selectivity_max = sel.get<double>();
    } else {
      require_object(sel, where + ".selectivity");
      reject_unknown(sel, {"choices", "min", "max"}, where + ".selectivity");
      get_optional(sel, "choices", where + ".selectivity", phase.selectivity_choices);
      get_optional(sel, "min", where + ".selectivity", phase.selectivity_min);
      get_optional(sel, "max", where + ".selectivity", phase.selectivity_max);
    }
  }
  if (doc.contains("residual")) {
    const auto& res = doc.at("residual");
    if (res.is_number()) {
      phase.residual_min = phase.residual_max = res.get<double>();
    } else {
      require_object(res, where + ".residual");
      reject_unknown(res, {"min", "max"}, where + ".residual");
      get_optional(res, "min", where + ".residual", phase.residual_min);
      get_optional(res, "max", where + ".residual", phase.residual_max);
    }
  }
  get_optional(doc, "aggregate_probability", where, phase.aggregate_probability);
  return phase;
}

}  // namespace

WorkloadConfig parse_workload(const json& doc) {
  const std::string where = "workload";
  require_object(doc, where);
  WorkloadConfig workload;
  get_optional(doc, "seed", where, workload.seed);
  if (doc.contains("phases")) {
    reject_unknown(doc, {"seed", "phases"}, where);
    const auto& phases = doc.at("phases");
    if (!phases.is_array()) {
      throw ConfigError("workload.phases: expected an array");
    }
    for (std::size_t i = 0; i < phases.size(); ++i) {
      workload.phases.push_back(parse_phase(phases[i], "workload.phases[" + std::to_string(i) + "]"));
    }
  } else {
    // Single-phase shorthand: the phase keys live directly in the block.
    json phase = doc;
    phase.erase("seed");
    workload.phases.push_back(parse_phase(phase, where));
  }
  return workload;
}

json to_json(const WorkloadConfig& workload) {
  json phases = json::array();
  for (const auto& p : workload.phases) {
    json sel = p.selectivity_choices.empty() ? json{{"min", p.selectivity_min}, {"max", p.selectivity_max}}
                                             : json{{"choices", p.selectivity_choices}};
    phases.push_back({{"name", p.name},
                      {"length", p.length},
                      {"mix", p.mix},
                      {"selectivity", sel},
                      {"residual", {{"min", p.residual_min}, {"max", p.residual_max}}},
                      {"aggregate_probability", p.aggregate_probability}});
  }
  return {{"seed", workload.seed}, {"phases", phases}};
}

Catalog ExperimentConfig::catalog() const { return Catalog(tables); }

double ExperimentConfig::scale_factor() const { return acm.scale_factor.value_or(1.0 / timing.t_seq_page_ms); }

CpuModelConfig ExperimentConfig::cpu_config() const {
  CpuModelConfig c;
  c.scale_factor = scale_factor();
  c.alpha = acm.alpha;
  c.window_size = acm.window_size;
  c.refit_every = acm.refit_every;
  c.epsilon_floor = acm.epsilon_floor;
  c.ridge_lambda = acm.ridge_lambda;
  c.defaults = {baseline.cpu_tuple_cost, baseline.cpu_operator_cost, baseline.cpu_index_tuple_cost};
  return c;
}

DiskModelConfig ExperimentConfig::disk_config() const {
  return {.random_page_cost_default = acm.random_page_cost_default.value_or(baseline.random_page_cost),
          .seq_page_cost = baseline.seq_page_cost,
          .min_observations = acm.min_observations};
}

void ExperimentConfig::validate() const {
  if (tables.empty()) {
    throw ConfigError("config: at least one table is required");
  }
  (void)catalog();  // validates tables and rejects duplicates
  if (cache_pages == 0) {
    throw ConfigError("config: cache_pages must be positive");
  }
  timing.validate();
  baseline.validate();
  cpu_config().validate();
  disk_config().validate();
}

ExperimentConfig parse_config(const json& doc) {
  require_object(doc, "config");
  reject_unknown(doc, {"tables", "cache_pages", "timing", "baseline", "acm", "workload"}, "config");
  ExperimentConfig config;
  if (!doc.contains("tables") || !doc.at("tables").is_array()) {
    throw ConfigError("config: 'tables' must be an array");
  }
  const auto& tables = doc.at("tables");
  for (std::size_t i = 0; i < tables.size(); ++i) {
    config.tables.push_back(parse_table(tables[i], i));
  }
  config.cache_pages = get<std::size_t>(doc, "cache_pages", "config");
  if (doc.contains("timing")) {
    config.timing = parse_timing(doc.at("timing"));
  }
  if (doc.contains("baseline")) {
    config.baseline = parse_cost_params(doc.at("baseline"));
  }
  if (doc.contains("acm")) {
    config.acm = parse_acm(doc.at("acm"));
  }
  if (doc.contains("workload")) {
    config.workload = parse_workload(doc.at("workload"));
  }
  config.validate();
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(path.string() + ": cannot open config");
  }
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

}  // namespace acm::harness
