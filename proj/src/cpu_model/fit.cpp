#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "acm/cpu_model.hpp"
#include "acm/errors.hpp"

namespace acm {
namespace {

constexpr std::size_t kFeatures = 3;

double feature(const OperatorObservation& obs, std::size_t column) noexcept {
  switch (column) {
    case 0:
      return static_cast<double>(obs.n_tuples);
    case 1:
      return static_cast<double>(obs.n_operations);
    default:
      return static_cast<double>(obs.n_index_entries);
  }
}

}  // namespace

FitResult fit(std::span<const OperatorObservation> observations, const CpuModelConfig& config) {
  if (observations.empty()) {
    throw InputError("fit: no observations");
  }
  const OperatorType type = observations.front().op_type;
  for (const auto& obs : observations) {
    if (obs.op_type != type) {
      throw InputError("fit: observations mix operator types");
    }
  }

  std::array<bool, kFeatures> active{};
  for (const auto& obs : observations) {
    for (std::size_t c = 0; c < kFeatures; ++c) {
      active[c] = active[c] || feature(obs, c) != 0.0;
    }
  }
  std::vector<std::size_t> columns;
  for (std::size_t c = 0; c < kFeatures; ++c) {
    if (active[c]) {
      columns.push_back(c);
    }
  }

  FitResult result;
  result.n_samples = observations.size();
  if (columns.empty()) {
    return result;
  }

  const auto rows = static_cast<Eigen::Index>(observations.size());
  const auto cols = static_cast<Eigen::Index>(columns.size());
  const bool ridge = config.ridge_lambda > 0.0;
  if (!ridge && rows < cols) {
    throw UnderdeterminedError("fit: " + std::to_string(rows) + " rows for " + std::to_string(cols) +
                               " active columns");
  }

  const Eigen::Index total_rows = ridge ? rows + cols : rows;
  Eigen::MatrixXd design = Eigen::MatrixXd::Zero(total_rows, cols);
  Eigen::VectorXd target = Eigen::VectorXd::Zero(total_rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& obs = observations[static_cast<std::size_t>(r)];
    for (Eigen::Index c = 0; c < cols; ++c) {
      design(r, c) = feature(obs, columns[static_cast<std::size_t>(c)]);
    }
    target(r) = obs.exec_time_ms * config.scale_factor - obs.disk_cost;
  }
  if (ridge) {
    // Tikhonov rows: sqrt(lambda) * I against a zero target.
    design.bottomRows(cols) = std::sqrt(config.ridge_lambda) * Eigen::MatrixXd::Identity(cols, cols);
  }

  // Unit-norm columns so rank detection does not depend on count magnitudes.
  Eigen::VectorXd norms = design.colwise().norm().transpose();
  for (Eigen::Index c = 0; c < cols; ++c) {
    design.col(c) /= norms(c);
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-12);
  if (qr.rank() < cols) {
    throw UnderdeterminedError("fit: design has rank " + std::to_string(qr.rank()) + " < " + std::to_string(cols) +
                               " active columns");
  }
  Eigen::VectorXd solution = qr.solve(target);

  for (Eigen::Index c = 0; c < cols; ++c) {
    const double value = std::max(solution(c) / norms(c), config.epsilon_floor);
    switch (columns[static_cast<std::size_t>(c)]) {
      case 0:
        result.cpu_tuple_cost = value;
        break;
      case 1:
        result.cpu_operator_cost = value;
        break;
      default:
        result.cpu_index_tuple_cost = value;
        break;
    }
  }
  return result;
}

}  // namespace acm
