#include "acm/cost_model.hpp"

#include <cmath>
#include <string>

#include "acm/errors.hpp"

namespace acm {
namespace {

double as_real(std::uint64_t n) noexcept { return static_cast<double>(n); }

void require_nonnegative(double value, const char* name) {
  if (!std::isfinite(value) || value < 0.0) {
    throw ConfigError(std::string(name) + " must be finite and >= 0, got " + std::to_string(value));
  }
}

}  // namespace

std::string_view to_string(OperatorType type) noexcept {
  switch (type) {
    case OperatorType::SeqScan:
      return "SeqScan";
    case OperatorType::IndexScan:
      return "IndexScan";
    case OperatorType::Agg:
      return "Agg";
  }
  return "Unknown";
}

std::optional<OperatorType> parse_operator_type(std::string_view name) noexcept {
  for (auto type : kAllOperatorTypes) {
    if (to_string(type) == name) {
      return type;
    }
  }
  return std::nullopt;
}

void CostParams::validate() const {
  require_nonnegative(cpu_tuple_cost, "cpu_tuple_cost");
  require_nonnegative(cpu_operator_cost, "cpu_operator_cost");
  require_nonnegative(cpu_index_tuple_cost, "cpu_index_tuple_cost");
  require_nonnegative(seq_page_cost, "seq_page_cost");
  require_nonnegative(random_page_cost, "random_page_cost");
  if (seq_page_cost <= 0.0) {
    throw ConfigError("seq_page_cost must be > 0");
  }
  if (random_page_cost < seq_page_cost) {
    throw ConfigError("random_page_cost must be >= seq_page_cost");
  }
}

OperatorCounts& OperatorCounts::operator+=(const OperatorCounts& other) noexcept {
  n_tuples += other.n_tuples;
  n_operations += other.n_operations;
  n_seq_pages += other.n_seq_pages;
  n_index_entries += other.n_index_entries;
  n_random_pages += other.n_random_pages;
  return *this;
}

double operator_cost(const CostParams& params, const OperatorCounts& counts) noexcept {
  return params.cpu_tuple_cost * as_real(counts.n_tuples) + params.cpu_operator_cost * as_real(counts.n_operations) +
         params.seq_page_cost * as_real(counts.n_seq_pages) +
         params.cpu_index_tuple_cost * as_real(counts.n_index_entries) +
         params.random_page_cost * as_real(counts.n_random_pages);
}

double seq_scan_cost(const CostParams& params, std::uint64_t n_tuples, std::uint64_t n_pages) noexcept {
  return operator_cost(params, {.n_tuples = n_tuples, .n_seq_pages = n_pages});
}

double agg_cost(const CostParams& params, std::uint64_t n_tuples) noexcept {
  return operator_cost(params, {.n_tuples = n_tuples});
}

double index_scan_cost(const CostParams& params, std::uint64_t n_tuples, std::uint64_t n_index_entries,
                       std::uint64_t n_random_pages) noexcept {
  return operator_cost(params,
                       {.n_tuples = n_tuples, .n_index_entries = n_index_entries, .n_random_pages = n_random_pages});
}

}  // namespace acm
