#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace acm {

enum class OperatorType : std::uint8_t { SeqScan, IndexScan, Agg };

inline constexpr std::array<OperatorType, 3> kAllOperatorTypes{
    OperatorType::SeqScan, OperatorType::IndexScan, OperatorType::Agg};

std::string_view to_string(OperatorType type) noexcept;
std::optional<OperatorType> parse_operator_type(std::string_view name) noexcept;

/// The five optimizer cost constants, in abstract cost units where one
/// sequential page fetch costs 1. Defaults are the PostgreSQL-style values.
struct CostParams {
  double cpu_tuple_cost = 0.01;
  double cpu_operator_cost = 0.0025;
  double cpu_index_tuple_cost = 0.005;
  double seq_page_cost = 1.0;
  double random_page_cost = 4.0;

  static constexpr CostParams zero() noexcept { return {0.0, 0.0, 0.0, 0.0, 0.0}; }

  /// Throws ConfigError unless every field is finite and nonnegative,
  /// seq_page_cost > 0 and random_page_cost >= seq_page_cost.
  void validate() const;

  friend bool operator==(const CostParams&, const CostParams&) = default;
};

/// Cardinalities an operator is charged for. Estimated at plan time,
/// measured after execution.
struct OperatorCounts {
  std::uint64_t n_tuples = 0;
  std::uint64_t n_operations = 0;
  std::uint64_t n_seq_pages = 0;
  std::uint64_t n_index_entries = 0;
  std::uint64_t n_random_pages = 0;

  OperatorCounts& operator+=(const OperatorCounts& other) noexcept;
  friend OperatorCounts operator+(OperatorCounts lhs, const OperatorCounts& rhs) noexcept {
    return lhs += rhs;
  }
  friend bool operator==(const OperatorCounts&, const OperatorCounts&) = default;
};

/// c_t*n_t + c_o*n_o + c_s*n_s + c_i*n_i + c_r*n_r.
double operator_cost(const CostParams& params, const OperatorCounts& counts) noexcept;

/// Unfiltered sequential scan: c_t*n_t + c_s*n_s.
double seq_scan_cost(const CostParams& params, std::uint64_t n_tuples, std::uint64_t n_pages) noexcept;

/// Aggregation: c_t*n_t.
double agg_cost(const CostParams& params, std::uint64_t n_tuples) noexcept;

/// Index scan: c_t*n_t + c_i*n_i + c_r*n_r. Which counts an index scan is
/// charged for is a local convention; see README.
double index_scan_cost(const CostParams& params, std::uint64_t n_tuples, std::uint64_t n_index_entries,
                       std::uint64_t n_random_pages) noexcept;

}  // namespace acm
