#include <cmath>
#include <string>

#include "acm/bufsim.hpp"
#include "acm/errors.hpp"

namespace acm {

void TableDef::validate() const {
  if (table_id.empty()) {
    throw ConfigError("table id must not be empty");
  }
  if (n_pages == 0 || tuples_per_page == 0) {
    throw ConfigError("table " + table_id + ": pages and tuples_per_page must be >= 1");
  }
  if (group_keys == 0) {
    throw ConfigError("table " + table_id + ": group_keys must be >= 1");
  }
}

Catalog::Catalog(std::vector<TableDef> tables) {
  for (auto& table : tables) {
    add(std::move(table));
  }
}

void Catalog::add(TableDef table) {
  table.validate();
  if (index_.contains(table.table_id)) {
    throw ConfigError("duplicate table " + table.table_id);
  }
  index_.emplace(table.table_id, static_cast<std::uint32_t>(tables_.size()));
  tables_.push_back(std::move(table));
}

const TableDef* Catalog::find(std::string_view table_id) const {
  auto it = index_.find(table_id);
  return it == index_.end() ? nullptr : &tables_[it->second];
}

const TableDef& Catalog::at(std::string_view table_id) const {
  const TableDef* table = find(table_id);
  if (table == nullptr) {
    throw InputError("unknown table " + std::string(table_id));
  }
  return *table;
}

std::uint32_t Catalog::ordinal(std::string_view table_id) const {
  auto it = index_.find(table_id);
  if (it == index_.end()) {
    throw InputError("unknown table " + std::string(table_id));
  }
  return it->second;
}

std::uint64_t Catalog::total_pages() const noexcept {
  std::uint64_t total = 0;
  for (const auto& table : tables_) {
    total += table.n_pages;
  }
  return total;
}

void TimingProfile::validate() const {
  const double values[] = {t_seq_page_ms, t_rand_page_ms, t_hit_page_ms, t_tuple_ms,
                           t_op_ms,       t_index_entry_ms, noise_sigma};
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ConfigError("timing profile values must be finite and >= 0");
    }
  }
  if (!(t_rand_page_ms >= t_seq_page_ms && t_seq_page_ms >= t_hit_page_ms)) {
    throw ConfigError("timing profile requires t_rand_page_ms >= t_seq_page_ms >= t_hit_page_ms");
  }
  if (t_seq_page_ms <= 0.0) {
    throw ConfigError("t_seq_page_ms must be > 0");
  }
}

}  // namespace acm
