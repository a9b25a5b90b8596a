#include "acm/plan.hpp"

#include <string>

#include "acm/errors.hpp"

namespace acm {
namespace {

void collect(const PlanNode& node, std::vector<const PlanNode*>& out) {
  out.push_back(&node);
  for (const auto& child : node.children) {
    collect(child, out);
  }
}

}  // namespace

std::vector<const PlanNode*> flatten(const PlanNode* root) {
  std::vector<const PlanNode*> nodes;
  if (root != nullptr) {
    collect(*root, nodes);
  }
  return nodes;
}

double plan_cost(const PlanNode* root, const OperatorParams& params) {
  double total = 0.0;
  for (const PlanNode* node : flatten(root)) {
    auto it = params.find(node->op_type);
    if (it == params.end()) {
      throw ConfigError("no cost parameters configured for operator " + std::string(to_string(node->op_type)));
    }
    total += operator_cost(it->second, node->counts);
  }
  return total;
}

}  // namespace acm
