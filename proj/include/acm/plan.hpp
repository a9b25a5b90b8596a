#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "acm/cost_model.hpp"

namespace acm {

/// Operator tree node. Counts are the planner's (exact-cardinality)
/// estimates; actual_time_ms is filled in once the plan has run.
struct PlanNode {
  OperatorType op_type = OperatorType::SeqScan;
  std::string table_id;
  OperatorCounts counts;
  std::vector<PlanNode> children;
  double estimated_cost = 0.0;
  std::optional<double> actual_time_ms;
};

/// Parameter set per operator type; disk parameters inside each entry are
/// already specialised for the table being costed.
using OperatorParams = std::map<OperatorType, CostParams>;

/// Sum of operator_cost over every node, each priced with the parameters of
/// its own operator type. A null root is the empty plan and costs 0.
/// Throws ConfigError when a node's type has no parameter entry.
double plan_cost(const PlanNode* root, const OperatorParams& params);

/// Preorder flattening of the tree.
std::vector<const PlanNode*> flatten(const PlanNode* root);

}  // namespace acm
