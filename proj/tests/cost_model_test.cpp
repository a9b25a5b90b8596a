#include <gtest/gtest.h>

#include <random>

#include "acm/cost_model.hpp"
#include "acm/errors.hpp"
#include "acm/plan.hpp"

namespace acm {
namespace {

CostParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(0.0, 5.0);
  return {d(rng), d(rng), d(rng), d(rng), d(rng)};
}

OperatorCounts random_counts(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> d(0, 100000);
  return {d(rng), d(rng), d(rng), d(rng), d(rng)};
}

TEST(OperatorCost, Examples) {
  EXPECT_EQ(operator_cost(CostParams::zero(), {7, 8, 9, 10, 11}), 0.0);
  EXPECT_DOUBLE_EQ(operator_cost(CostParams{}, {.n_tuples = 100}), 1.0);
  CostParams p = CostParams::zero();
  p.cpu_tuple_cost = 0.01;
  p.seq_page_cost = 1.0;
  EXPECT_DOUBLE_EQ(operator_cost(p, {.n_tuples = 10, .n_seq_pages = 5}), 5.1);
}

TEST(OperatorCost, Specializations) {
  EXPECT_EQ(seq_scan_cost(CostParams{}, 0, 0), 0.0);
  EXPECT_DOUBLE_EQ(seq_scan_cost(CostParams{}, 100, 10), 11.0);
  EXPECT_DOUBLE_EQ(seq_scan_cost(CostParams{}, 1, 1), 1.01);

  EXPECT_EQ(agg_cost(CostParams{}, 0), 0.0);
  EXPECT_DOUBLE_EQ(agg_cost(CostParams{}, 1000), 10.0);
  CostParams p;
  p.cpu_tuple_cost = 0.02;
  EXPECT_DOUBLE_EQ(agg_cost(p, 50), 1.0);

  EXPECT_EQ(index_scan_cost(CostParams{}, 0, 0, 0), 0.0);
  EXPECT_DOUBLE_EQ(index_scan_cost(CostParams{}, 10, 10, 10), 40.15);
  CostParams q;
  q.random_page_cost = 1.0;
  EXPECT_DOUBLE_EQ(index_scan_cost(q, 10, 10, 10), 10.15);
}

TEST(OperatorCost, Linearity) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 2000; ++i) {
    const CostParams p = random_params(rng);
    const OperatorCounts a = random_counts(rng);
    const OperatorCounts b = random_counts(rng);
    const double lhs = operator_cost(p, a + b);
    const double rhs = operator_cost(p, a) + operator_cost(p, b);
    EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, lhs));
  }
}

TEST(OperatorCost, Monotone) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> field(0, 4);
  std::uniform_real_distribution<double> bump(0.0, 3.0);
  for (int i = 0; i < 2000; ++i) {
    const CostParams p = random_params(rng);
    const OperatorCounts c = random_counts(rng);
    const double base = operator_cost(p, c);

    OperatorCounts more = c;
    std::uint64_t* counts[] = {&more.n_tuples, &more.n_operations, &more.n_seq_pages, &more.n_index_entries,
                               &more.n_random_pages};
    *counts[field(rng)] += 1 + static_cast<std::uint64_t>(bump(rng) * 100);
    EXPECT_GE(operator_cost(p, more), base);

    CostParams higher = p;
    double* params[] = {&higher.cpu_tuple_cost, &higher.cpu_operator_cost, &higher.cpu_index_tuple_cost,
                        &higher.seq_page_cost, &higher.random_page_cost};
    *params[field(rng)] += bump(rng);
    EXPECT_GE(operator_cost(higher, c), base);
  }
}

TEST(OperatorCost, SpecializationConsistency) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    const CostParams p = random_params(rng);
    const OperatorCounts c = random_counts(rng);
    EXPECT_EQ(seq_scan_cost(p, c.n_tuples, c.n_seq_pages),
              operator_cost(p, {.n_tuples = c.n_tuples, .n_seq_pages = c.n_seq_pages}));
    EXPECT_EQ(agg_cost(p, c.n_tuples), operator_cost(p, {.n_tuples = c.n_tuples}));
    EXPECT_EQ(index_scan_cost(p, c.n_tuples, c.n_index_entries, c.n_random_pages),
              operator_cost(p, {.n_tuples = c.n_tuples,
                                .n_index_entries = c.n_index_entries,
                                .n_random_pages = c.n_random_pages}));
  }
}

TEST(CostParams, Validate) {
  EXPECT_NO_THROW(CostParams{}.validate());
  CostParams p;
  p.cpu_tuple_cost = -1.0;
  EXPECT_THROW(p.validate(), ConfigError);
}

TEST(OperatorType, RoundTrip) {
  for (OperatorType t : kAllOperatorTypes) {
    EXPECT_EQ(parse_operator_type(to_string(t)), t);
  }
  EXPECT_FALSE(parse_operator_type("HashJoin").has_value());
}

OperatorParams defaults_for_all() {
  OperatorParams m;
  for (OperatorType t : kAllOperatorTypes) {
    m[t] = CostParams{};
  }
  return m;
}

TEST(PlanCost, Examples) {
  const OperatorParams params = defaults_for_all();
  PlanNode scan{.op_type = OperatorType::SeqScan, .counts = {.n_tuples = 100, .n_seq_pages = 10}};
  EXPECT_DOUBLE_EQ(plan_cost(&scan, params), 11.0);

  PlanNode agg{.op_type = OperatorType::Agg, .counts = {.n_tuples = 100}, .children = {scan}};
  EXPECT_DOUBLE_EQ(plan_cost(&agg, params), 12.0);

  EXPECT_EQ(plan_cost(nullptr, params), 0.0);
}

TEST(PlanCost, MissingParamsThrows) {
  OperatorParams params;
  params[OperatorType::SeqScan] = CostParams{};
  PlanNode scan{.op_type = OperatorType::SeqScan};
  PlanNode agg{.op_type = OperatorType::Agg, .children = {scan}};
  EXPECT_NO_THROW(plan_cost(&scan, params));
  EXPECT_THROW(plan_cost(&agg, params), ConfigError);
}

PlanNode random_tree(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> type(0, 2);
  std::uniform_int_distribution<int> fanout(0, depth > 0 ? 3 : 0);
  PlanNode node{.op_type = kAllOperatorTypes[static_cast<std::size_t>(type(rng))], .counts = random_counts(rng)};
  const int kids = fanout(rng);
  for (int i = 0; i < kids; ++i) {
    node.children.push_back(random_tree(rng, depth - 1));
  }
  return node;
}

TEST(PlanCost, EqualsSumOverFlattenedNodesInAnyOrder) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 300; ++i) {
    OperatorParams params;
    for (OperatorType t : kAllOperatorTypes) {
      params[t] = random_params(rng);
    }
    const PlanNode root = random_tree(rng, 4);
    std::vector<const PlanNode*> nodes = flatten(&root);
    std::shuffle(nodes.begin(), nodes.end(), rng);
    double sum = 0.0;
    for (const PlanNode* n : nodes) {
      sum += operator_cost(params.at(n->op_type), n->counts);
    }
    const double total = plan_cost(&root, params);
    EXPECT_NEAR(total, sum, 1e-9 * std::max(1.0, total));
  }
}

TEST(Flatten, Preorder) {
  PlanNode leaf{.op_type = OperatorType::IndexScan};
  PlanNode root{.op_type = OperatorType::Agg, .children = {leaf}};
  const auto nodes = flatten(&root);
  ASSERT_EQ(nodes.size(), 2u);
  EXPECT_EQ(nodes[0]->op_type, OperatorType::Agg);
  EXPECT_EQ(nodes[1]->op_type, OperatorType::IndexScan);
  EXPECT_TRUE(flatten(nullptr).empty());
}

}  // namespace
}  // namespace acm
