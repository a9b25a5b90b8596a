#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "acm/cpu_model.hpp"

namespace acm::oracle {

/// Brute-force reference for the CPU-parameter regression: forms X^T X and
/// X^T y over the nonzero feature columns and solves them by Gaussian
/// elimination with partial pivoting. No clamping. Deliberately shares no
/// code with acm::fit.
///
/// Returns (c_t, c_o, c_i), absent for all-zero columns. Throws
/// UnderdeterminedError when the normal matrix is singular.
std::array<std::optional<double>, 3> solve_normal_equations(std::span<const OperatorObservation> rows,
                                                            double scale_factor);

/// Rows of `n_t,n_o,n_i,s,time` with a header line. Throws InputError.
std::vector<OperatorObservation> read_rows_csv(std::istream& in);

}  // namespace acm::oracle
