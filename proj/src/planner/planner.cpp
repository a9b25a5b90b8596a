#include "acm/planner.hpp"

#include <algorithm>

#include "acm/errors.hpp"

namespace acm {
namespace {

OperatorParams params_map(const ParamsSource& source, std::string_view table_id) {
  OperatorParams map;
  for (auto type : kAllOperatorTypes) {
    map.emplace(type, source.params_for(type, table_id));
  }
  return map;
}

void price(PlanNode& node, const OperatorParams& params) {
  for (auto& child : node.children) {
    price(child, params);
  }
  node.estimated_cost = operator_cost(params.at(node.op_type), node.counts);
}

PlanNode with_aggregate(PlanNode scan, const QuerySpec& query, const TableDef& table) {
  if (!query.aggregate) {
    return scan;
  }
  const std::uint64_t input = emitted_rows(table, query.selectivity, query.residual_selectivity);
  PlanNode agg{.op_type = OperatorType::Agg, .table_id = table.table_id};
  agg.counts.n_tuples = input;
  agg.counts.n_operations = group_count(table, input);
  agg.children.push_back(std::move(scan));
  return agg;
}

}  // namespace

void QuerySpec::validate() const {
  if (!(selectivity >= 0.0 && selectivity <= 1.0)) {
    throw InputError("query on " + table_id + ": selectivity must lie in [0, 1]");
  }
  if (!(residual_selectivity >= 0.0 && residual_selectivity <= 1.0)) {
    throw InputError("query on " + table_id + ": residual_selectivity must lie in [0, 1]");
  }
}

FixedParams::FixedParams(CostParams params) {
  for (auto type : kAllOperatorTypes) {
    per_type_.emplace(type, params);
  }
}

CostParams FixedParams::params_for(OperatorType type, std::string_view /*table_id*/) const {
  auto it = per_type_.find(type);
  if (it == per_type_.end()) {
    throw ConfigError("no cost parameters configured for operator " + std::string(to_string(type)));
  }
  return it->second;
}

OperatorType access_path(const PlanNode& plan) {
  const PlanNode* node = &plan;
  while (!node->children.empty()) {
    node = &node->children.front();
  }
  return node->op_type;
}

std::vector<PlanNode> enumerate_plans(const QuerySpec& query, const Catalog& catalog, const ParamsSource& params) {
  query.validate();
  const TableDef& table = catalog.at(query.table_id);
  const OperatorParams priced_with = params_map(params, table.table_id);

  std::vector<PlanNode> plans;
  PlanNode seq{.op_type = OperatorType::SeqScan, .table_id = table.table_id};
  seq.counts.n_tuples = table.n_tuples();
  seq.counts.n_seq_pages = table.n_pages;
  plans.push_back(with_aggregate(std::move(seq), query, table));

  if (table.has_index) {
    const std::uint64_t matched = matched_rows(table, query.selectivity);
    PlanNode index{.op_type = OperatorType::IndexScan, .table_id = table.table_id};
    index.counts.n_tuples = emitted_rows(table, query.selectivity, query.residual_selectivity);
    index.counts.n_index_entries = matched;
    index.counts.n_random_pages = std::min(matched, table.n_pages);
    plans.push_back(with_aggregate(std::move(index), query, table));
  }

  for (auto& plan : plans) {
    price(plan, priced_with);
  }
  return plans;
}

PlanNode enumerate_and_choose(const QuerySpec& query, const Catalog& catalog, const ParamsSource& params) {
  std::vector<PlanNode> plans = enumerate_plans(query, catalog, params);
  const OperatorParams priced_with = params_map(params, query.table_id);
  std::size_t best = 0;
  double best_cost = plan_cost(&plans[0], priced_with);
  for (std::size_t i = 1; i < plans.size(); ++i) {
    const double cost = plan_cost(&plans[i], priced_with);
    if (cost < best_cost) {  // strict: ties stay with the SeqScan plan
      best = i;
      best_cost = cost;
    }
  }
  return std::move(plans[best]);
}

std::vector<CostTimePair> estimated_vs_actual(const PlanNode* plan) {
  std::vector<CostTimePair> pairs;
  for (const PlanNode* node : flatten(plan)) {
    if (!node->actual_time_ms) {
      throw InputError("estimated_vs_actual: plan node " + std::string(to_string(node->op_type)) +
                       " has not been executed");
    }
    pairs.push_back({node->estimated_cost, *node->actual_time_ms});
  }
  return pairs;
}

}  // namespace acm
