#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "acm/cost_model.hpp"

namespace acm {

/// One executed operator, as a training row for the CPU parameters.
struct OperatorObservation {
  OperatorType op_type = OperatorType::SeqScan;
  std::uint64_t n_tuples = 0;
  std::uint64_t n_operations = 0;
  std::uint64_t n_index_entries = 0;
  double disk_cost = 0.0;     // s = c_s*n_s + c_r*n_r, in cost units
  double exec_time_ms = 0.0;  // measured operator time

  friend bool operator==(const OperatorObservation&, const OperatorObservation&) = default;
};

/// (c_t, c_o, c_i) for one operator type.
struct CpuParams {
  double cpu_tuple_cost = 0.01;
  double cpu_operator_cost = 0.0025;
  double cpu_index_tuple_cost = 0.005;

  friend bool operator==(const CpuParams&, const CpuParams&) = default;
};

/// Result of one least-squares solve. A parameter is absent when its feature
/// column was identically zero in the window; the caller keeps whatever it
/// had before for that parameter.
struct FitResult {
  std::optional<double> cpu_tuple_cost;
  std::optional<double> cpu_operator_cost;
  std::optional<double> cpu_index_tuple_cost;
  std::size_t n_samples = 0;

  friend bool operator==(const FitResult&, const FitResult&) = default;
};

struct CpuModelConfig {
  double scale_factor = 1.0;  // cost units per millisecond
  double alpha = 0.3;         // weight of the previous prediction
  std::size_t window_size = 512;
  std::size_t refit_every = 10;
  double epsilon_floor = 1e-6;
  double ridge_lambda = 0.0;  // 0 keeps plain least squares
  CpuParams defaults{};

  void validate() const;

  friend bool operator==(const CpuModelConfig&, const CpuModelConfig&) = default;
};

/// Least-squares fit of (c_t, c_o, c_i) to rows (n_t, n_o, n_i, s, time):
/// minimises sum_k (n_t c_t + n_o c_o + n_i c_i - (time * scale_factor - s))^2.
/// The disk term enters with a fixed coefficient of 1. Columns that are zero
/// in every row are left out of the solve and reported absent; fitted values
/// are clamped to at least epsilon_floor.
///
/// Throws UnderdeterminedError when the active columns are not linearly
/// independent over the rows (including fewer rows than columns), and
/// InputError for an empty or mixed-type row set.
FitResult fit(std::span<const OperatorObservation> observations, const CpuModelConfig& config);

/// EMA step with the weighting used by the adaptive model:
///   (1 - alpha) * latest_fit + alpha * previous_pred.
/// alpha weights the old prediction, so alpha' = 1 - alpha gives the usual
/// "weight of the new sample" form.
double smooth(double previous_pred, double latest_fit, double alpha);

struct FitHistoryEntry {
  OperatorType op_type = OperatorType::SeqScan;
  std::size_t step = 0;  // refit sequence number for this operator type, from 1
  FitResult fit;
  CpuParams smoothed;

  friend bool operator==(const FitHistoryEntry&, const FitHistoryEntry&) = default;
};

/// Sliding windows of observations per operator type plus the smoothed
/// parameter predictions derived from them.
class CpuModel {
 public:
  explicit CpuModel(CpuModelConfig config = {});

  /// Appends to the operator type's window, evicting the oldest row once
  /// window_size is exceeded. Does not refit.
  void ingest(const OperatorObservation& obs);

  /// ingest() followed by a refit once refit_every new rows have accumulated
  /// for that operator type. Returns true if a refit produced new values.
  bool record(const OperatorObservation& obs);

  /// Fits the current window and folds the result into the smoothed
  /// prediction. An underdetermined window leaves the prediction unchanged
  /// and returns false.
  bool refit(OperatorType type);

  /// Smoothed parameters for the type; configured defaults for anything
  /// that has never been fitted.
  CpuParams current_params(OperatorType type) const;

  std::size_t window_length(OperatorType type) const;
  std::vector<OperatorObservation> window(OperatorType type) const;
  const std::vector<FitHistoryEntry>& history() const noexcept { return history_; }
  const CpuModelConfig& config() const noexcept { return config_; }

  struct Smoothed {
    std::optional<double> cpu_tuple_cost;
    std::optional<double> cpu_operator_cost;
    std::optional<double> cpu_index_tuple_cost;
    friend bool operator==(const Smoothed&, const Smoothed&) = default;
  };
  std::optional<Smoothed> smoothed(OperatorType type) const;

  /// Checkpoint support: reinstates a smoothed state for a type.
  void restore_smoothed(OperatorType type, const Smoothed& state);

  friend bool operator==(const CpuModel&, const CpuModel&) = default;

 private:
  struct PerType {
    std::deque<OperatorObservation> window;
    std::size_t since_refit = 0;
    std::size_t fits = 0;
    Smoothed smoothed;
    friend bool operator==(const PerType&, const PerType&) = default;
  };

  CpuModelConfig config_;
  std::map<OperatorType, PerType> per_type_;
  std::vector<FitHistoryEntry> history_;
};

/// CSV export of the fit history: op_type,step,c_t,c_o,c_i,smoothed_c_t,
/// smoothed_c_o,smoothed_c_i,n_samples. Absent fitted values are empty.
void write_fit_history_csv(std::ostream& out, std::span<const FitHistoryEntry> history);

}  // namespace acm
