#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace lrsb {

struct Assignment {
  /// For each row, the matched column (nullopt when rows outnumber columns).
  std::vector<std::optional<std::size_t>> row_to_col;
  double total = 0.0;
};

/// Minimum-cost one-to-one assignment on a rectangular cost matrix
/// (Kuhn-Munkres with potentials, O(n^2 m)). Every row is matched when
/// rows <= cols, otherwise every column is.
Assignment MinCostAssignment(const Eigen::MatrixXd& cost);

/// Maximum-weight one-to-one assignment.
Assignment MaxWeightAssignment(const Eigen::MatrixXd& weight);

}  // namespace lrsb
