#include "acm/oracle/normal_equations.hpp"

#include <cmath>
#include <istream>
#include <sstream>
#include <string>
#include <utility>

#include "acm/errors.hpp"

namespace acm::oracle {

std::array<std::optional<double>, 3> solve_normal_equations(std::span<const OperatorObservation> rows,
                                                            double scale_factor) {
  auto value = [](const OperatorObservation& r, int c) {
    return c == 0 ? static_cast<double>(r.n_tuples)
                  : c == 1 ? static_cast<double>(r.n_operations) : static_cast<double>(r.n_index_entries);
  };

  std::vector<int> cols;
  for (int c = 0; c < 3; ++c) {
    for (const auto& r : rows) {
      if (value(r, c) != 0.0) {
        cols.push_back(c);
        break;
      }
    }
  }
  const std::size_t k = cols.size();
  std::array<std::optional<double>, 3> out{};
  if (k == 0) {
    return out;
  }

  // Augmented normal system [X^T X | X^T y].
  std::vector<std::vector<double>> m(k, std::vector<double>(k + 1, 0.0));
  for (const auto& r : rows) {
    const double y = r.exec_time_ms * scale_factor - r.disk_cost;
    for (std::size_t i = 0; i < k; ++i) {
      const double xi = value(r, cols[i]);
      for (std::size_t j = 0; j < k; ++j) {
        m[i][j] += xi * value(r, cols[j]);
      }
      m[i][k] += xi * y;
    }
  }

  double scale = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    scale = std::max(scale, std::abs(m[i][i]));
  }
  for (std::size_t p = 0; p < k; ++p) {
    std::size_t pivot = p;
    for (std::size_t i = p + 1; i < k; ++i) {
      if (std::abs(m[i][p]) > std::abs(m[pivot][p])) {
        pivot = i;
      }
    }
    if (std::abs(m[pivot][p]) <= 1e-13 * scale) {
      throw UnderdeterminedError("normal equations are singular");
    }
    std::swap(m[p], m[pivot]);
    for (std::size_t i = p + 1; i < k; ++i) {
      const double f = m[i][p] / m[p][p];
      for (std::size_t j = p; j <= k; ++j) {
        m[i][j] -= f * m[p][j];
      }
    }
  }
  std::vector<double> x(k, 0.0);
  for (std::size_t i = k; i-- > 0;) {
    double acc = m[i][k];
    for (std::size_t j = i + 1; j < k; ++j) {
      acc -= m[i][j] * x[j];
    }
    x[i] = acc / m[i][i];
  }
  for (std::size_t i = 0; i < k; ++i) {
    out[static_cast<std::size_t>(cols[i])] = x[i];
  }
  return out;
}

std::vector<OperatorObservation> read_rows_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw InputError("rows csv: empty input");
  }
  std::vector<OperatorObservation> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    std::stringstream fields(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(fields, cell, ',')) {
      try {
        v.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw InputError("rows csv line " + std::to_string(line_no) + ": bad number '" + cell + "'");
      }
    }
    if (v.size() != 5) {
      throw InputError("rows csv line " + std::to_string(line_no) + ": expected 5 fields");
    }
    for (int c = 0; c < 3; ++c) {
      if (v[c] < 0.0 || v[c] != std::floor(v[c])) {
        throw InputError("rows csv line " + std::to_string(line_no) + ": counts must be nonnegative integers");
      }
    }
    rows.push_back({.op_type = OperatorType::SeqScan,
                    .n_tuples = static_cast<std::uint64_t>(v[0]),
                    .n_operations = static_cast<std::uint64_t>(v[1]),
                    .n_index_entries = static_cast<std::uint64_t>(v[2]),
                    .disk_cost = v[3],
                    .exec_time_ms = v[4]});
  }
  return rows;
}

}  // namespace acm::oracle
