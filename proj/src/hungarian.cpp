#include "lrsb/hungarian.hpp"

#include <limits>

namespace lrsb {
namespace {

// Requires rows <= cols. Returns, for each row, its column.
std::vector<std::size_t> SolveWide(const Eigen::MatrixXd& a) {
  const auto n = static_cast<std::size_t>(a.rows());
  const auto m = static_cast<std::size_t>(a.cols());
  const double inf = std::numeric_limits<double>::infinity();
  // 1-based potentials; p[j] = row matched to column j (0 = free).
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);

  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(m + 1, inf);
    std::vector<bool> used(m + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = a(static_cast<Eigen::Index>(i0 - 1),
                             static_cast<Eigen::Index>(j - 1)) -
                           u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::size_t> row_to_col(n, 0);
  for (std::size_t j = 1; j <= m; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

}  // namespace

Assignment MinCostAssignment(const Eigen::MatrixXd& cost) {
  Assignment out;
  out.row_to_col.assign(static_cast<std::size_t>(cost.rows()), std::nullopt);
  if (cost.rows() == 0 || cost.cols() == 0) return out;

  if (cost.rows() <= cost.cols()) {
    const auto cols = SolveWide(cost);
    for (std::size_t i = 0; i < cols.size(); ++i) out.row_to_col[i] = cols[i];
  } else {
    const Eigen::MatrixXd t = cost.transpose();
    const auto rows = SolveWide(t);
    for (std::size_t j = 0; j < rows.size(); ++j) out.row_to_col[rows[j]] = j;
  }
  for (std::size_t i = 0; i < out.row_to_col.size(); ++i) {
    if (out.row_to_col[i]) {
      out.total += cost(static_cast<Eigen::Index>(i),
                        static_cast<Eigen::Index>(*out.row_to_col[i]));
    }
  }
  return out;
}

Assignment MaxWeightAssignment(const Eigen::MatrixXd& weight) {
  Assignment out = MinCostAssignment(-weight);
  out.total = -out.total;
  return out;
}

}  // namespace lrsb
