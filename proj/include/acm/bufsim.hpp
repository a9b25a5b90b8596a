#pragma once

#include <cstdint>
#include <functional>
#include <list>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "acm/cost_model.hpp"

namespace acm {

struct TableDef {
  std::string table_id;
  std::uint64_t n_pages = 1;
  std::uint64_t tuples_per_page = 1;
  bool has_index = false;
  std::uint64_t group_keys = 1;  // distinct values of the grouping column

  std::uint64_t n_tuples() const noexcept { return n_pages * tuples_per_page; }
  void validate() const;

  friend bool operator==(const TableDef&, const TableDef&) = default;
};

/// Tables by id, each with a dense ordinal used for page identities.
class Catalog {
 public:
  Catalog() = default;
  explicit Catalog(std::vector<TableDef> tables);

  void add(TableDef table);
  const TableDef* find(std::string_view table_id) const;
  /// Throws InputError for unknown tables.
  const TableDef& at(std::string_view table_id) const;
  std::uint32_t ordinal(std::string_view table_id) const;
  const std::vector<TableDef>& tables() const noexcept { return tables_; }
  std::uint64_t total_pages() const noexcept;

 private:
  std::vector<TableDef> tables_;
  std::map<std::string, std::uint32_t, std::less<>> index_;
};

struct PageId {
  std::uint32_t table = 0;
  std::uint64_t page = 0;

  friend bool operator==(const PageId&, const PageId&) = default;
  friend auto operator<=>(const PageId&, const PageId&) = default;
};

struct PageIdHash {
  std::size_t operator()(const PageId& id) const noexcept {
    return std::hash<std::uint64_t>{}(id.page * 0x9E3779B97F4A7C15ULL ^ id.table);
  }
};

/// Replacement-policy interface for the simulated buffer pool.
class PageCache {
 public:
  virtual ~PageCache() = default;

  /// Touches a page. Returns true on a hit; on a miss the page is loaded,
  /// evicting per policy when the cache is full.
  virtual bool access(PageId page) = 0;
  virtual bool contains(PageId page) const = 0;
  virtual std::size_t size() const noexcept = 0;
  virtual std::size_t capacity() const noexcept = 0;
  virtual void clear() = 0;
  /// Resident pages, most recently used first.
  virtual std::vector<PageId> resident() const = 0;
};

class LruCache final : public PageCache {
 public:
  /// Throws InputError for a zero capacity.
  explicit LruCache(std::size_t capacity_pages);

  bool access(PageId page) override;
  bool contains(PageId page) const override;
  std::size_t size() const noexcept override { return map_.size(); }
  std::size_t capacity() const noexcept override { return capacity_; }
  void clear() override;
  std::vector<PageId> resident() const override;

 private:
  std::size_t capacity_;
  std::list<PageId> recency_;  // front = most recently used
  std::unordered_map<PageId, std::list<PageId>::iterator, PageIdHash> map_;
};

/// Hidden ground-truth timings of the simulated machine.
struct TimingProfile {
  double t_seq_page_ms = 0.05;
  double t_rand_page_ms = 0.2;
  double t_hit_page_ms = 0.05;
  double t_tuple_ms = 0.0025;
  double t_op_ms = 0.005;
  double t_index_entry_ms = 0.001;
  double noise_sigma = 0.0;
  std::uint64_t seed = 42;

  void validate() const;

  friend bool operator==(const TimingProfile&, const TimingProfile&) = default;
};

using Rng = std::mt19937_64;

/// Outcome of one executed operator: the counts it was actually charged for,
/// the page traffic it caused and its simulated time.
struct OperatorExecution {
  OperatorType op_type = OperatorType::SeqScan;
  OperatorCounts counts;
  std::uint64_t hits = 0;
  std::uint64_t reads = 0;
  std::uint64_t rows_out = 0;
  double time_ms = 0.0;

  friend bool operator==(const OperatorExecution&, const OperatorExecution&) = default;
};

/// ceil(fraction * n) with a relative guard so 0.07 * 100 gives 7, not 8.
std::uint64_t fraction_of(double fraction, std::uint64_t n) noexcept;

/// Rows an index-condition selectivity matches, then rows surviving the
/// residual filter.
std::uint64_t matched_rows(const TableDef& table, double selectivity) noexcept;
std::uint64_t emitted_rows(const TableDef& table, double selectivity, double residual_selectivity) noexcept;
std::uint64_t group_count(const TableDef& table, std::uint64_t input_rows) noexcept;

/// Full sequential scan: pages 0..n_pages-1 in order, every tuple processed.
OperatorExecution execute_seq_scan(PageCache& cache, std::uint32_t table_ordinal, const TableDef& table,
                                   std::uint64_t rows_out, const TimingProfile& profile, Rng& rng);

/// Index range scan: each matched entry lands on a seeded uniform heap page;
/// distinct pages are fetched once, in page order.
/// Charged per index entry and per emitted row. Throws InputError on an
/// unindexed table or a fraction outside [0, 1].
OperatorExecution execute_index_scan(PageCache& cache, std::uint32_t table_ordinal, const TableDef& table,
                                     double selectivity, double residual_selectivity, const TimingProfile& profile,
                                     Rng& rng);

/// Aggregation over input_rows producing `groups` groups. No page I/O.
OperatorExecution execute_agg(std::uint64_t input_rows, std::uint64_t groups, const TimingProfile& profile,
                              Rng& rng);

/// The simulated storage engine: catalog, one buffer pool and the noise RNG.
class Simulator {
 public:
  Simulator(Catalog catalog, std::size_t cache_pages, TimingProfile profile);

  const Catalog& catalog() const noexcept { return catalog_; }
  const TimingProfile& profile() const noexcept { return profile_; }
  PageCache& cache() noexcept { return *cache_; }
  const PageCache& cache() const noexcept { return *cache_; }
  Rng& rng() noexcept { return rng_; }

  /// Cold cache and a freshly seeded RNG.
  void reset();

 private:
  Catalog catalog_;
  TimingProfile profile_;
  std::unique_ptr<PageCache> cache_;
  Rng rng_;
};

}  // namespace acm
