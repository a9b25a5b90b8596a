#include <gtest/gtest.h>

#include <random>

#include "acm/disk_model.hpp"
#include "acm/errors.hpp"
#include "acm/harness/replay.hpp"
#include "acm/planner.hpp"

namespace acm {
namespace {

Catalog one_table(std::uint64_t pages, std::uint64_t tpp, bool index = true) {
  return Catalog({{.table_id = "t", .n_pages = pages, .tuples_per_page = tpp, .has_index = index,
                   .group_keys = 50}});
}

CostParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CostParams p;
  p.cpu_tuple_cost = 0.001 + 0.1 * u(rng);
  p.cpu_operator_cost = 0.001 + 0.1 * u(rng);
  p.cpu_index_tuple_cost = 0.001 + 0.1 * u(rng);
  p.seq_page_cost = 0.5 + u(rng);
  p.random_page_cost = p.seq_page_cost * (1.0 + 5.0 * u(rng));
  return p;
}

TEST(Planner, FullSelectivityPicksSeqScan) {
  std::mt19937_64 rng(14);
  const Catalog c = one_table(100, 40);
  for (int i = 0; i < 500; ++i) {
    const FixedParams params(random_params(rng));
    const PlanNode plan = enumerate_and_choose({.table_id = "t", .selectivity = 1.0}, c, params);
    EXPECT_EQ(access_path(plan), OperatorType::SeqScan);
  }
}

TEST(Planner, SingleTuplePicksIndexScan) {
  const Catalog c = one_table(100, 40);
  const PlanNode plan = enumerate_and_choose({.table_id = "t", .selectivity = 1e-6}, c, FixedParams{});
  EXPECT_EQ(access_path(plan), OperatorType::IndexScan);
  EXPECT_EQ(plan.counts.n_random_pages, 1u);
}

TEST(Planner, UnindexedTableOnlySeqScan) {
  const Catalog c = one_table(100, 40, false);
  EXPECT_EQ(enumerate_plans({.table_id = "t", .selectivity = 1e-6}, c, FixedParams{}).size(), 1u);
}

TEST(Planner, Errors) {
  const Catalog c = one_table(10, 10);
  EXPECT_THROW(enumerate_and_choose({.table_id = "nope"}, c, FixedParams{}), InputError);
  EXPECT_THROW(enumerate_and_choose({.table_id = "t", .selectivity = 2.0}, c, FixedParams{}), InputError);
}

TEST(Planner, AggOnTop) {
  const Catalog c = one_table(100, 40);
  const PlanNode plan =
      enumerate_and_choose({.table_id = "t", .selectivity = 1.0, .aggregate = true}, c, FixedParams{});
  ASSERT_EQ(plan.op_type, OperatorType::Agg);
  ASSERT_EQ(plan.children.size(), 1u);
  EXPECT_EQ(plan.counts.n_tuples, 4000u);
  EXPECT_EQ(plan.counts.n_operations, 50u);
  EXPECT_DOUBLE_EQ(plan.estimated_cost, 0.01 * 4000 + 0.0025 * 50);
}

// Largest matched-row count at which the index plan is still strictly cheaper.
std::uint64_t index_threshold(const CostParams& p, std::uint64_t tuples, std::uint64_t pages) {
  const double seq = p.cpu_tuple_cost * static_cast<double>(tuples) + p.seq_page_cost * static_cast<double>(pages);
  std::uint64_t best = 0;
  for (std::uint64_t k = 1; k <= tuples; ++k) {
    const double idx = (p.cpu_tuple_cost + p.cpu_index_tuple_cost) * static_cast<double>(k) +
                       p.random_page_cost * static_cast<double>(std::min(k, pages));
    if (idx < seq) {
      best = k;
    }
  }
  return best;
}

TEST(Planner, HitAwareRandomPageCostFlipsPlan) {
  const std::uint64_t pages = 100;
  const std::uint64_t tpp = 100;
  const Catalog c = one_table(pages, tpp);

  DiskModel disk;
  for (int i = 0; i < 3; ++i) {
    disk.record_execution("t", static_cast<std::int64_t>(pages), 0);
  }
  CostParams cached;
  cached.random_page_cost = disk.random_page_cost_for("t");
  ASSERT_EQ(cached.random_page_cost, 1.0);

  const std::uint64_t cold_k = index_threshold(CostParams{}, pages * tpp, pages);
  const std::uint64_t warm_k = index_threshold(cached, pages * tpp, pages);
  ASSERT_LT(cold_k, warm_k);

  const std::uint64_t k = (cold_k + warm_k) / 2;
  const double sel = static_cast<double>(k) / static_cast<double>(pages * tpp);
  const QuerySpec q{.table_id = "t", .selectivity = sel};
  EXPECT_EQ(access_path(enumerate_and_choose(q, c, FixedParams{})), OperatorType::SeqScan);
  EXPECT_EQ(access_path(enumerate_and_choose(q, c, FixedParams(cached))), OperatorType::IndexScan);

  // Right at each threshold.
  const auto at = [&](std::uint64_t kk, const CostParams& p) {
    const QuerySpec qq{.table_id = "t", .selectivity = static_cast<double>(kk) / static_cast<double>(pages * tpp)};
    return access_path(enumerate_and_choose(qq, c, FixedParams(p)));
  };
  EXPECT_EQ(at(cold_k, CostParams{}), OperatorType::IndexScan);
  EXPECT_EQ(at(cold_k + 1, CostParams{}), OperatorType::SeqScan);
  EXPECT_EQ(at(warm_k, cached), OperatorType::IndexScan);
  EXPECT_EQ(at(warm_k + 1, cached), OperatorType::SeqScan);
}

TEST(Planner, ScaleInvariantArgmin) {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Catalog c({{"a", 200, 50, true, 100}, {"b", 30, 400, true, 5000}});
  for (int i = 0; i < 2000; ++i) {
    const CostParams p = random_params(rng);
    const double k = std::exp(8.0 * u(rng) - 4.0);
    CostParams scaled = p;
    scaled.cpu_tuple_cost *= k;
    scaled.cpu_operator_cost *= k;
    scaled.cpu_index_tuple_cost *= k;
    scaled.seq_page_cost *= k;
    scaled.random_page_cost *= k;
    const QuerySpec q{.table_id = i % 2 ? "a" : "b",
                      .selectivity = std::pow(10.0, -4.0 * u(rng)),
                      .aggregate = u(rng) < 0.5,
                      .residual_selectivity = u(rng)};
    EXPECT_EQ(access_path(enumerate_and_choose(q, c, FixedParams(p))),
              access_path(enumerate_and_choose(q, c, FixedParams(scaled))));
  }
}

TEST(Planner, ChosenIsNoWorseThanAlternatives) {
  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Catalog c({{"a", 200, 50, true, 100}});
  for (int i = 0; i < 2000; ++i) {
    const FixedParams params(random_params(rng));
    const QuerySpec q{.table_id = "a", .selectivity = u(rng) * u(rng), .aggregate = u(rng) < 0.5};
    const PlanNode chosen = enumerate_and_choose(q, c, params);
    for (const PlanNode& alt : enumerate_plans(q, c, params)) {
      OperatorParams per_type;
      for (OperatorType t : kAllOperatorTypes) {
        per_type[t] = params.params_for(t, "a");
      }
      EXPECT_LE(plan_cost(&chosen, per_type), plan_cost(&alt, per_type));
    }
  }
}

TEST(Planner, TiesGoToSeqScan) {
  // Seq: 0*N + 1*P = 10. Index at k = 10: 0 + 0 + 1*10 = 10.
  const Catalog c = one_table(10, 10);
  CostParams p = CostParams::zero();
  p.seq_page_cost = 1.0;
  p.random_page_cost = 1.0;
  const PlanNode plan = enumerate_and_choose({.table_id = "t", .selectivity = 0.1}, c, FixedParams(p));
  EXPECT_EQ(access_path(plan), OperatorType::SeqScan);
}

TEST(Planner, NoAdaptationIdentity) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Catalog c({{"a", 200, 50, true, 100}, {"b", 30, 400, true, 5000}});
  const CostParams baseline;
  const DiskModel disk;
  const CpuModel cpu;
  const harness::AdaptiveParams adaptive(baseline, disk, cpu);
  for (int i = 0; i < 1000; ++i) {
    const QuerySpec q{.table_id = i % 2 ? "a" : "b", .selectivity = u(rng) * u(rng), .aggregate = u(rng) < 0.5};
    const PlanNode a = enumerate_and_choose(q, c, FixedParams(baseline));
    const PlanNode b = enumerate_and_choose(q, c, adaptive);
    EXPECT_EQ(access_path(a), access_path(b));
    EXPECT_EQ(a.estimated_cost, b.estimated_cost);
  }
}

TEST(EstimatedVsActual, Pairs) {
  EXPECT_TRUE(estimated_vs_actual(nullptr).empty());
  PlanNode leaf{.op_type = OperatorType::SeqScan, .estimated_cost = 3.0, .actual_time_ms = 0.3};
  EXPECT_EQ(estimated_vs_actual(&leaf).size(), 1u);
  PlanNode root{.op_type = OperatorType::Agg, .children = {leaf}, .estimated_cost = 1.0, .actual_time_ms = 0.1};
  const auto pairs = estimated_vs_actual(&root);
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_EQ(pairs[0].cost, 1.0);
  EXPECT_EQ(pairs[1].time_ms, 0.3);
  root.children[0].actual_time_ms.reset();
  EXPECT_THROW(estimated_vs_actual(&root), InputError);
}

}  // namespace
}  // namespace acm
