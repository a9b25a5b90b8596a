#include "acm/harness/checkpoint.hpp"

#include "acm/errors.hpp"

namespace acm::harness {
namespace {

using nlohmann::json;

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> read_optional(const json& doc, const char* key) {
  if (!doc.contains(key) || doc.at(key).is_null()) {
    return std::nullopt;
  }
  return doc.at(key).get<double>();
}

}  // namespace

json checkpoint(const DiskModel& model) {
  json tables = json::array();
  for (const auto& [id, stats] : model.tables()) {
    tables.push_back({{"table", id},
                      {"last_hit_ratio", optional_number(stats.last_hit_ratio)},
                      {"observation_count", stats.observation_count},
                      {"tc", stats.tc}});
  }
  const auto& c = model.config();
  return {{"kind", "disk-model"},
          {"version", 1},
          {"qc", model.qc()},
          {"random_page_cost_default", c.random_page_cost_default},
          {"seq_page_cost", c.seq_page_cost},
          {"min_observations", c.min_observations},
          {"tables", tables}};
}

DiskModel restore_disk_model(const json& doc) {
  try {
    if (doc.at("kind") != "disk-model" || doc.at("version") != 1) {
      throw ConfigError("checkpoint: not a version 1 disk-model snapshot");
    }
    DiskModelConfig config{.random_page_cost_default = doc.at("random_page_cost_default").get<double>(),
                           .seq_page_cost = doc.at("seq_page_cost").get<double>(),
                           .min_observations = doc.at("min_observations").get<std::uint64_t>()};
    DiskModel::TableMap tables;
    for (const auto& t : doc.at("tables")) {
      TableBufferStats stats{.table_id = t.at("table").get<std::string>(),
                             .last_hit_ratio = read_optional(t, "last_hit_ratio"),
                             .observation_count = t.at("observation_count").get<std::uint64_t>(),
                             .tc = t.at("tc").get<std::uint64_t>()};
      tables.emplace(stats.table_id, stats);
    }
    return DiskModel::restore(config, doc.at("qc").get<std::uint64_t>(), std::move(tables));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("checkpoint: ") + e.what());
  }
}

json checkpoint(const CpuModel& model) {
  const auto& c = model.config();
  json types = json::object();
  for (auto type : kAllOperatorTypes) {
    if (auto s = model.smoothed(type)) {
      types[std::string(to_string(type))] = {{"cpu_tuple_cost", optional_number(s->cpu_tuple_cost)},
                                             {"cpu_operator_cost", optional_number(s->cpu_operator_cost)},
                                             {"cpu_index_tuple_cost", optional_number(s->cpu_index_tuple_cost)}};
    }
  }
  return {{"kind", "cpu-model"},
          {"version", 1},
          {"scale_factor", c.scale_factor},
          {"alpha", c.alpha},
          {"window_size", c.window_size},
          {"refit_every", c.refit_every},
          {"epsilon_floor", c.epsilon_floor},
          {"ridge_lambda", c.ridge_lambda},
          {"defaults",
           {c.defaults.cpu_tuple_cost, c.defaults.cpu_operator_cost, c.defaults.cpu_index_tuple_cost}},
          {"smoothed", types}};
}

CpuModel restore_cpu_model(const json& doc) {
  try {
    if (doc.at("kind") != "cpu-model" || doc.at("version") != 1) {
      throw ConfigError("checkpoint: not a version 1 cpu-model snapshot");
    }
    CpuModelConfig config;
    config.scale_factor = doc.at("scale_factor").get<double>();
    config.alpha = doc.at("alpha").get<double>();
    config.window_size = doc.at("window_size").get<std::size_t>();
    config.refit_every = doc.at("refit_every").get<std::size_t>();
    config.epsilon_floor = doc.at("epsilon_floor").get<double>();
    config.ridge_lambda = doc.at("ridge_lambda").get<double>();
    const auto& d = doc.at("defaults");
    config.defaults = {d.at(0).get<double>(), d.at(1).get<double>(), d.at(2).get<double>()};
    CpuModel model(config);
    for (const auto& [name, s] : doc.at("smoothed").items()) {
      auto type = parse_operator_type(name);
      if (!type) {
        throw ConfigError("checkpoint: unknown operator type " + name);
      }
      model.restore_smoothed(*type, {.cpu_tuple_cost = read_optional(s, "cpu_tuple_cost"),
                                      .cpu_operator_cost = read_optional(s, "cpu_operator_cost"),
                                      .cpu_index_tuple_cost = read_optional(s, "cpu_index_tuple_cost")});
    }
    return model;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("checkpoint: ") + e.what());
  }
}

}  // namespace acm::harness
