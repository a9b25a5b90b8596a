#pragma once

#include <span>

#include "acm/planner.hpp"

namespace acm::harness {

/// Pearson product-moment correlation, clamped to [-1, 1]. Throws
/// UndefinedCorrelationError for fewer than two points or zero variance,
/// InputError for mismatched lengths.
double pearson(std::span<const double> x, std::span<const double> y);
double pearson(std::span<const CostTimePair> pairs);

/// (sum(baseline) - sum(adaptive)) / sum(baseline). Throws InputError for
/// mismatched lengths or a nonpositive baseline total.
double latency_improvement(std::span<const double> baseline_ms, std::span<const double> adaptive_ms);

}  // namespace acm::harness
