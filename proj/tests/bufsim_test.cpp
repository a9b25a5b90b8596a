#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "acm/bufsim.hpp"
#include "acm/errors.hpp"

namespace acm {
namespace {

// Linear-list LRU, most recent first.
class ReferenceLru {
 public:
  explicit ReferenceLru(std::size_t capacity) : capacity_(capacity) {}

  bool access(PageId page) {
    const auto it = std::find(pages_.begin(), pages_.end(), page);
    const bool hit = it != pages_.end();
    if (hit) {
      pages_.erase(it);
    } else if (pages_.size() == capacity_) {
      pages_.pop_back();
    }
    pages_.insert(pages_.begin(), page);
    return hit;
  }

  const std::vector<PageId>& pages() const { return pages_; }

 private:
  std::size_t capacity_;
  std::vector<PageId> pages_;
};

// Forwards to an LRU and counts every touch.
class CountingCache final : public PageCache {
 public:
  explicit CountingCache(std::size_t capacity) : inner_(capacity) {}
  bool access(PageId page) override {
    ++touches;
    return inner_.access(page);
  }
  bool contains(PageId page) const override { return inner_.contains(page); }
  std::size_t size() const noexcept override { return inner_.size(); }
  std::size_t capacity() const noexcept override { return inner_.capacity(); }
  void clear() override { inner_.clear(); }
  std::vector<PageId> resident() const override { return inner_.resident(); }

  std::uint64_t touches = 0;

 private:
  LruCache inner_;
};

TableDef table(std::uint64_t pages, std::uint64_t tpp = 10, bool index = true) {
  return {.table_id = "t", .n_pages = pages, .tuples_per_page = tpp, .has_index = index};
}

TEST(LruCache, MatchesReferenceOnRandomTraces) {
  std::mt19937_64 rng(12);
  for (std::size_t capacity : {1u, 7u, 64u, 300u}) {
    LruCache lru(capacity);
    ReferenceLru ref(capacity);
    std::uniform_int_distribution<std::uint32_t> tbl(0, 2);
    std::uniform_int_distribution<std::uint64_t> page(0, 400);
    for (int i = 0; i < 10000; ++i) {
      const PageId p{tbl(rng), page(rng)};
      ASSERT_EQ(lru.access(p), ref.access(p)) << "touch " << i;
      ASSERT_LE(lru.size(), capacity);
    }
    EXPECT_EQ(lru.resident(), ref.pages());
  }
}

TEST(LruCache, ZeroCapacityThrows) { EXPECT_THROW(LruCache(0), InputError); }

TEST(SeqScan, ColdThenWarm) {
  LruCache cache(16);
  Rng rng(1);
  const TimingProfile profile;
  const auto first = execute_seq_scan(cache, 0, table(10), 0, profile, rng);
  EXPECT_EQ(first.reads, 10u);
  EXPECT_EQ(first.hits, 0u);
  const auto second = execute_seq_scan(cache, 0, table(10), 0, profile, rng);
  EXPECT_EQ(second.hits, 10u);
  EXPECT_EQ(second.reads, 0u);
}

TEST(SeqScan, SequentialFlooding) {
  LruCache cache(5);
  Rng rng(1);
  execute_seq_scan(cache, 0, table(10), 0, TimingProfile{}, rng);
  const auto second = execute_seq_scan(cache, 0, table(10), 0, TimingProfile{}, rng);
  EXPECT_EQ(second.hits, 0u);
  EXPECT_EQ(second.reads, 10u);
}

TEST(SeqScan, ExactTimeWithoutNoise) {
  LruCache cache(4);
  Rng rng(1);
  const TimingProfile profile;
  const auto e = execute_seq_scan(cache, 0, table(1, 1), 1, profile, rng);
  EXPECT_EQ(e.time_ms, profile.t_seq_page_ms + profile.t_tuple_ms);
  EXPECT_EQ(e.counts, (OperatorCounts{.n_tuples = 1, .n_seq_pages = 1}));
}

TEST(IndexScan, ZeroSelectivityTouchesNothing) {
  CountingCache cache(16);
  Rng rng(1);
  const auto e = execute_index_scan(cache, 0, table(10), 0.0, 1.0, TimingProfile{}, rng);
  EXPECT_EQ(cache.touches, 0u);
  EXPECT_EQ(e.hits + e.reads, 0u);
  EXPECT_EQ(e.time_ms, 0.0);
}

TEST(IndexScan, ResidentTableIsAllHits) {
  LruCache cache(100);
  Rng rng(1);
  execute_seq_scan(cache, 0, table(50), 0, TimingProfile{}, rng);
  const auto e = execute_index_scan(cache, 0, table(50), 0.3, 1.0, TimingProfile{}, rng);
  EXPECT_GT(e.hits, 0u);
  EXPECT_EQ(e.reads, 0u);
}

TEST(IndexScan, SeededTouchesRepeat) {
  const TimingProfile profile;
  auto run = [&] {
    LruCache cache(1000);
    Rng rng(99);
    execute_index_scan(cache, 0, table(100), 0.1, 1.0, profile, rng);
    auto pages = cache.resident();
    std::sort(pages.begin(), pages.end());
    return pages;
  };
  const auto a = run();
  EXPECT_FALSE(a.empty());
  EXPECT_EQ(a, run());
}

TEST(IndexScan, CountsAndTiming) {
  LruCache cache(1000);
  Rng rng(3);
  TimingProfile profile;
  const auto e = execute_index_scan(cache, 0, table(100, 10), 0.05, 0.5, profile, rng);
  EXPECT_EQ(e.counts.n_index_entries, 50u);
  EXPECT_EQ(e.counts.n_tuples, 25u);
  EXPECT_EQ(e.counts.n_random_pages, e.hits + e.reads);
  EXPECT_LE(e.counts.n_random_pages, 50u);
  EXPECT_EQ(e.hits, 0u);
  const double expected = static_cast<double>(e.reads) * profile.t_rand_page_ms + 50 * profile.t_index_entry_ms +
                          25 * profile.t_tuple_ms;
  EXPECT_NEAR(e.time_ms, expected, 1e-12);
}

TEST(IndexScan, Errors) {
  LruCache cache(10);
  Rng rng(1);
  EXPECT_THROW(execute_index_scan(cache, 0, table(10, 10, false), 0.1, 1.0, TimingProfile{}, rng), InputError);
  EXPECT_THROW(execute_index_scan(cache, 0, table(10), 1.5, 1.0, TimingProfile{}, rng), InputError);
}

TEST(Agg, Timing) {
  Rng rng(1);
  const TimingProfile profile;
  EXPECT_EQ(execute_agg(0, 0, profile, rng).time_ms, 0.0);
  const auto e = execute_agg(1000, 40, profile, rng);
  EXPECT_NEAR(e.time_ms, 1000 * profile.t_tuple_ms + 40 * profile.t_op_ms, 1e-12);
  EXPECT_EQ(e.counts, (OperatorCounts{.n_tuples = 1000, .n_operations = 40}));

  TimingProfile noisy = profile;
  noisy.noise_sigma = 0.1;
  Rng a(5);
  Rng b(5);
  EXPECT_EQ(execute_agg(1000, 40, noisy, a).time_ms, execute_agg(1000, 40, noisy, b).time_ms);
}

TEST(Bufsim, ConservationAgainstShadowCounter) {
  std::mt19937_64 gen(13);
  const std::vector<TableDef> tables{{"a", 40, 10, true}, {"b", 25, 30, true}, {"c", 60, 5, true}};
  std::uniform_int_distribution<std::size_t> pick(0, tables.size() - 1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  CountingCache cache(70);
  Rng rng(4);
  TimingProfile profile;
  profile.noise_sigma = 0.05;
  for (int q = 0; q < 500; ++q) {
    const std::size_t i = pick(gen);
    const std::uint64_t before = cache.touches;
    const auto e = u(gen) < 0.5 ? execute_seq_scan(cache, static_cast<std::uint32_t>(i), tables[i], 0, profile, rng)
                                : execute_index_scan(cache, static_cast<std::uint32_t>(i), tables[i], u(gen) * 0.2,
                                                     1.0, profile, rng);
    ASSERT_EQ(e.hits + e.reads, cache.touches - before);
    ASSERT_LE(cache.size(), 70u);
  }
}

TEST(Bufsim, Deterministic) {
  const Catalog catalog({{"a", 40, 10, true}, {"b", 25, 30, true}});
  TimingProfile profile;
  profile.noise_sigma = 0.2;
  auto run = [&] {
    Simulator sim(catalog, 50, profile);
    std::vector<OperatorExecution> out;
    for (int q = 0; q < 100; ++q) {
      const std::uint32_t t = static_cast<std::uint32_t>(q % 2);
      const TableDef& def = sim.catalog().tables()[t];
      out.push_back(q % 3 ? execute_index_scan(sim.cache(), t, def, 0.01 * (q % 7), 0.5, sim.profile(), sim.rng())
                          : execute_seq_scan(sim.cache(), t, def, 0, sim.profile(), sim.rng()));
    }
    return out;
  };
  EXPECT_EQ(run(), run());
}

TEST(Bufsim, NoiselessTimeIsLinearInCounts) {
  LruCache cache(30);
  Rng rng(2);
  const TimingProfile p{.t_seq_page_ms = 0.05, .t_rand_page_ms = 0.2, .t_hit_page_ms = 0.05};
  const double sf = 1.0 / p.t_seq_page_ms;
  for (int q = 0; q < 200; ++q) {
    const auto e = execute_index_scan(cache, 0, table(50, 20), 0.001 * (q % 40), 0.7, p, rng);
    const double predicted = (p.t_tuple_ms * sf) * static_cast<double>(e.counts.n_tuples) +
                             (p.t_index_entry_ms * sf) * static_cast<double>(e.counts.n_index_entries) +
                             (p.t_rand_page_ms * sf) * static_cast<double>(e.reads) +
                             (p.t_hit_page_ms * sf) * static_cast<double>(e.hits);
    ASSERT_NEAR(e.time_ms * sf, predicted, 1e-9 * std::max(1.0, predicted));
  }
}

TEST(Catalog, Lookup) {
  const Catalog c({{"a", 4, 2, true}, {"b", 6, 1, false}});
  EXPECT_EQ(c.ordinal("b"), 1u);
  EXPECT_EQ(c.at("a").n_tuples(), 8u);
  EXPECT_EQ(c.total_pages(), 10u);
  EXPECT_EQ(c.find("z"), nullptr);
  EXPECT_THROW(c.at("z"), InputError);
}

TEST(FractionOf, Rounding) {
  EXPECT_EQ(fraction_of(0.07, 100), 7u);
  EXPECT_EQ(fraction_of(0.071, 100), 8u);
  EXPECT_EQ(fraction_of(0.0, 100), 0u);
  EXPECT_EQ(fraction_of(1.0, 100), 100u);
  EXPECT_EQ(fraction_of(1e-9, 100), 1u);
}

}  // namespace
}  // namespace acm
