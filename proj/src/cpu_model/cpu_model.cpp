#include <cmath>
#include <string>

#include "acm/cpu_model.hpp"
#include "acm/errors.hpp"

namespace acm {
namespace {

std::optional<double> fold(const std::optional<double>& previous, const std::optional<double>& latest,
                           double alpha) {
  if (!latest) {
    return previous;
  }
  if (!previous) {
    return latest;  // first fit seeds the prediction
  }
  return smooth(*previous, *latest, alpha);
}

void write_optional(std::ostream& out, const std::optional<double>& value) {
  if (value) {
    out << *value;
  }
}

}  // namespace

void CpuModelConfig::validate() const {
  if (!std::isfinite(scale_factor) || scale_factor <= 0.0) {
    throw ConfigError("scale_factor must be finite and > 0");
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ConfigError("alpha must lie in [0, 1]");
  }
  if (window_size == 0) {
    throw ConfigError("window_size must be positive");
  }
  if (refit_every == 0) {
    throw ConfigError("refit_every must be positive");
  }
  if (!std::isfinite(epsilon_floor) || epsilon_floor <= 0.0) {
    throw ConfigError("epsilon_floor must be finite and > 0");
  }
  if (!std::isfinite(ridge_lambda) || ridge_lambda < 0.0) {
    throw ConfigError("ridge_lambda must be finite and >= 0");
  }
}

double smooth(double previous_pred, double latest_fit, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InputError("smooth: alpha must lie in [0, 1]");
  }
  return (1.0 - alpha) * latest_fit + alpha * previous_pred;
}

CpuModel::CpuModel(CpuModelConfig config) : config_(config) { config_.validate(); }

void CpuModel::ingest(const OperatorObservation& obs) {
  auto& slot = per_type_[obs.op_type];
  slot.window.push_back(obs);
  while (slot.window.size() > config_.window_size) {
    slot.window.pop_front();
  }
  ++slot.since_refit;
}

bool CpuModel::record(const OperatorObservation& obs) {
  ingest(obs);
  if (per_type_[obs.op_type].since_refit < config_.refit_every) {
    return false;
  }
  return refit(obs.op_type);
}

bool CpuModel::refit(OperatorType type) {
  auto it = per_type_.find(type);
  if (it == per_type_.end() || it->second.window.empty()) {
    return false;
  }
  auto& slot = it->second;
  slot.since_refit = 0;
  const std::vector<OperatorObservation> rows(slot.window.begin(), slot.window.end());
  FitResult result;
  try {
    result = fit(rows, config_);
  } catch (const UnderdeterminedError&) {
    return false;
  }
  slot.smoothed.cpu_tuple_cost = fold(slot.smoothed.cpu_tuple_cost, result.cpu_tuple_cost, config_.alpha);
  slot.smoothed.cpu_operator_cost = fold(slot.smoothed.cpu_operator_cost, result.cpu_operator_cost, config_.alpha);
  slot.smoothed.cpu_index_tuple_cost =
      fold(slot.smoothed.cpu_index_tuple_cost, result.cpu_index_tuple_cost, config_.alpha);
  ++slot.fits;
  history_.push_back({.op_type = type, .step = slot.fits, .fit = result, .smoothed = current_params(type)});
  return true;
}

CpuParams CpuModel::current_params(OperatorType type) const {
  CpuParams params = config_.defaults;
  auto it = per_type_.find(type);
  if (it == per_type_.end()) {
    return params;
  }
  const auto& s = it->second.smoothed;
  params.cpu_tuple_cost = s.cpu_tuple_cost.value_or(params.cpu_tuple_cost);
  params.cpu_operator_cost = s.cpu_operator_cost.value_or(params.cpu_operator_cost);
  params.cpu_index_tuple_cost = s.cpu_index_tuple_cost.value_or(params.cpu_index_tuple_cost);
  return params;
}

std::size_t CpuModel::window_length(OperatorType type) const {
  auto it = per_type_.find(type);
  return it == per_type_.end() ? 0 : it->second.window.size();
}

std::vector<OperatorObservation> CpuModel::window(OperatorType type) const {
  auto it = per_type_.find(type);
  if (it == per_type_.end()) {
    return {};
  }
  return {it->second.window.begin(), it->second.window.end()};
}

std::optional<CpuModel::Smoothed> CpuModel::smoothed(OperatorType type) const {
  auto it = per_type_.find(type);
  if (it == per_type_.end()) {
    return std::nullopt;
  }
  return it->second.smoothed;
}

void CpuModel::restore_smoothed(OperatorType type, const Smoothed& state) { per_type_[type].smoothed = state; }

void write_fit_history_csv(std::ostream& out, std::span<const FitHistoryEntry> history) {
  out << "op_type,step,c_t,c_o,c_i,smoothed_c_t,smoothed_c_o,smoothed_c_i,n_samples\n";
  const auto precision = out.precision(12);
  for (const auto& entry : history) {
    out << to_string(entry.op_type) << ',' << entry.step << ',';
    write_optional(out, entry.fit.cpu_tuple_cost);
    out << ',';
    write_optional(out, entry.fit.cpu_operator_cost);
    out << ',';
    write_optional(out, entry.fit.cpu_index_tuple_cost);
    out << ',' << entry.smoothed.cpu_tuple_cost << ',' << entry.smoothed.cpu_operator_cost << ','
        << entry.smoothed.cpu_index_tuple_cost << ',' << entry.fit.n_samples << '\n';
  }
  out.precision(precision);
}

}  // namespace acm
