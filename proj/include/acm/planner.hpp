#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "acm/bufsim.hpp"
#include "acm/cost_model.hpp"
#include "acm/plan.hpp"

namespace acm {

/// A single-table query: an indexable predicate matching `selectivity` of
/// the rows, an optional residual filter keeping `residual_selectivity` of
/// those, and an optional aggregate on top.
struct QuerySpec {
  std::string table_id;
  double selectivity = 1.0;
  bool aggregate = false;
  double residual_selectivity = 1.0;

  /// Throws InputError for fractions outside [0, 1].
  void validate() const;

  friend bool operator==(const QuerySpec&, const QuerySpec&) = default;
};

/// Supplies the parameters the planner prices a node with: per operator
/// type, with the table's random page cost already injected.
class ParamsSource {
 public:
  virtual ~ParamsSource() = default;
  virtual CostParams params_for(OperatorType type, std::string_view table_id) const = 0;
};

/// Same parameters for every table; the non-adaptive baseline.
class FixedParams final : public ParamsSource {
 public:
  explicit FixedParams(CostParams params = {});
  explicit FixedParams(OperatorParams per_type) : per_type_(std::move(per_type)) {}

  CostParams params_for(OperatorType type, std::string_view table_id) const override;

 private:
  OperatorParams per_type_;
};

/// The access path a plan uses: the op type of its scan leaf.
OperatorType access_path(const PlanNode& plan);

/// Every priced alternative for the query: the SeqScan-based plan first,
/// then the IndexScan-based plan when the table is indexed. Counts are
/// exact cardinalities from the catalog.
std::vector<PlanNode> enumerate_plans(const QuerySpec& query, const Catalog& catalog, const ParamsSource& params);

/// Cheapest plan by plan cost; ties go to SeqScan. Throws InputError for an
/// unknown table.
PlanNode enumerate_and_choose(const QuerySpec& query, const Catalog& catalog, const ParamsSource& params);

struct CostTimePair {
  double cost = 0.0;
  double time_ms = 0.0;
};

/// Per-node (estimated cost, actual time), preorder. Throws InputError if any
/// node has not been executed.
std::vector<CostTimePair> estimated_vs_actual(const PlanNode* plan);

}  // namespace acm
