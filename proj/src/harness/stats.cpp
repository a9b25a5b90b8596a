#include "acm/harness/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "acm/errors.hpp"

namespace acm::harness {

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) {
    throw InputError("pearson: coordinate lists differ in length");
  }
  const std::size_t n = x.size();
  if (n < 2) {
    throw UndefinedCorrelationError("pearson: need at least two points");
  }
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);

  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) {
    throw UndefinedCorrelationError("pearson: zero variance");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

double pearson(std::span<const CostTimePair> pairs) {
  std::vector<double> cost;
  std::vector<double> time;
  cost.reserve(pairs.size());
  time.reserve(pairs.size());
  for (const auto& p : pairs) {
    cost.push_back(p.cost);
    time.push_back(p.time_ms);
  }
  return pearson(cost, time);
}

double latency_improvement(std::span<const double> baseline_ms, std::span<const double> adaptive_ms) {
  if (baseline_ms.size() != adaptive_ms.size()) {
    throw InputError("latency_improvement: runs differ in length");
  }
  double baseline = 0.0;
  double adaptive = 0.0;
  for (std::size_t i = 0; i < baseline_ms.size(); ++i) {
    baseline += baseline_ms[i];
    adaptive += adaptive_ms[i];
  }
  if (!(baseline > 0.0)) {
    throw InputError("latency_improvement: baseline total must be positive");
  }
  return (baseline - adaptive) / baseline;
}

}  // namespace acm::harness
