#include <algorithm>
#include <cmath>
#include <vector>

#include "acm/bufsim.hpp"
#include "acm/errors.hpp"

namespace acm {
namespace {

double noise_factor(const TimingProfile& profile, Rng& rng) {
  if (profile.noise_sigma == 0.0) {
    return 1.0;
  }
  // Mean-one lognormal: exp(sigma * Z - sigma^2 / 2).
  const double sigma = profile.noise_sigma;
  std::lognormal_distribution<double> dist(-0.5 * sigma * sigma, sigma);
  return dist(rng);
}

void require_fraction(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw InputError(std::string(name) + " must lie in [0, 1]");
  }
}

}  // namespace

std::uint64_t fraction_of(double fraction, std::uint64_t n) noexcept {
  const double exact = fraction * static_cast<double>(n);
  const double guarded = exact - 1e-9 * std::max(1.0, exact);
  if (guarded <= 0.0) {
    return 0;
  }
  return std::min(n, static_cast<std::uint64_t>(std::ceil(guarded)));
}

std::uint64_t matched_rows(const TableDef& table, double selectivity) noexcept {
  return fraction_of(selectivity, table.n_tuples());
}

std::uint64_t emitted_rows(const TableDef& table, double selectivity, double residual_selectivity) noexcept {
  return fraction_of(residual_selectivity, matched_rows(table, selectivity));
}

std::uint64_t group_count(const TableDef& table, std::uint64_t input_rows) noexcept {
  return std::min(input_rows, table.group_keys);
}

OperatorExecution execute_seq_scan(PageCache& cache, std::uint32_t table_ordinal, const TableDef& table,
                                   std::uint64_t rows_out, const TimingProfile& profile, Rng& rng) {
  OperatorExecution exec{.op_type = OperatorType::SeqScan};
  double time = 0.0;
  for (std::uint64_t page = 0; page < table.n_pages; ++page) {
    if (cache.access({table_ordinal, page})) {
      ++exec.hits;
      time += profile.t_hit_page_ms;
    } else {
      ++exec.reads;
      time += profile.t_seq_page_ms;
    }
  }
  exec.counts.n_tuples = table.n_tuples();
  exec.counts.n_seq_pages = table.n_pages;
  time += profile.t_tuple_ms * static_cast<double>(exec.counts.n_tuples);
  exec.time_ms = time * noise_factor(profile, rng);
  exec.rows_out = rows_out;
  return exec;
}

OperatorExecution execute_index_scan(PageCache& cache, std::uint32_t table_ordinal, const TableDef& table,
                                     double selectivity, double residual_selectivity, const TimingProfile& profile,
                                     Rng& rng) {
  if (!table.has_index) {
    throw InputError("index scan on unindexed table " + table.table_id);
  }
  require_fraction(selectivity, "selectivity");
  require_fraction(residual_selectivity, "residual_selectivity");

  OperatorExecution exec{.op_type = OperatorType::IndexScan};
  const std::uint64_t matched = matched_rows(table, selectivity);
  const std::uint64_t emitted = fraction_of(residual_selectivity, matched);
  std::uniform_int_distribution<std::uint64_t> page_dist(0, table.n_pages - 1);
  std::vector<bool> wanted(table.n_pages, false);
  for (std::uint64_t entry = 0; entry < matched; ++entry) {
    wanted[page_dist(rng)] = true;
  }
  double time = 0.0;
  std::uint64_t fetched = 0;
  for (std::uint64_t page = 0; page < table.n_pages; ++page) {
    if (!wanted[page]) {
      continue;
    }
    ++fetched;
    if (cache.access({table_ordinal, page})) {
      ++exec.hits;
      time += profile.t_hit_page_ms;
    } else {
      ++exec.reads;
      time += profile.t_rand_page_ms;
    }
  }
  exec.counts.n_tuples = emitted;
  exec.counts.n_index_entries = matched;
  exec.counts.n_random_pages = fetched;
  time += profile.t_index_entry_ms * static_cast<double>(matched) + profile.t_tuple_ms * static_cast<double>(emitted);
  exec.time_ms = time * noise_factor(profile, rng);
  exec.rows_out = emitted;
  return exec;
}

OperatorExecution execute_agg(std::uint64_t input_rows, std::uint64_t groups, const TimingProfile& profile,
                              Rng& rng) {
  OperatorExecution exec{.op_type = OperatorType::Agg};
  exec.counts.n_tuples = input_rows;
  exec.counts.n_operations = groups;
  const double time =
      profile.t_tuple_ms * static_cast<double>(input_rows) + profile.t_op_ms * static_cast<double>(groups);
  exec.time_ms = time * noise_factor(profile, rng);
  exec.rows_out = groups;
  return exec;
}

Simulator::Simulator(Catalog catalog, std::size_t cache_pages, TimingProfile profile)
    : catalog_(std::move(catalog)),
      profile_(profile),
      cache_(std::make_unique<LruCache>(cache_pages)),
      rng_(profile.seed) {
  profile_.validate();
}

void Simulator::reset() {
  cache_->clear();
  rng_.seed(profile_.seed);
}

}  // namespace acm
