#include "lrsb/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "lrsb/kmeans.hpp"
#include "lrsb/random.hpp"
#include "lrsb/recovery.hpp"

namespace lrsb {

BiclusterSet ExtractBiclusters(const DenseMatrix& x, std::size_t k_rows,
                               std::size_t k_cols, std::uint64_t seed,
                               const ExtractionOptions& options) {
  const std::size_t n = x.rows();
  const std::size_t m = x.cols();
  if (k_rows < 1 || k_rows > n) {
    throw InvalidArgument("k_rows must lie in [1, " + std::to_string(n) + "]");
  }
  if (k_cols < 1 || k_cols > m) {
    throw InvalidArgument("k_cols must lie in [1, " + std::to_string(m) + "]");
  }

  const KMeansResult row_groups =
      KMeans(x.values(), k_rows, StageSeed(seed, "rows"));
  const KMeansResult col_groups =
      KMeans(x.values().transpose(), k_cols, StageSeed(seed, "cols"));

  std::vector<std::vector<std::size_t>> row_members(k_rows);
  std::vector<std::vector<std::size_t>> col_members(k_cols);
  for (std::size_t i = 0; i < n; ++i) row_members[row_groups.assignment[i]].push_back(i);
  for (std::size_t j = 0; j < m; ++j) col_members[col_groups.assignment[j]].push_back(j);

  BiclusterSet out({}, Shape{n, m});
  for (const auto& rows : row_members) {
    if (rows.empty()) continue;
    for (const auto& cols : col_members) {
      if (cols.empty()) continue;
      double abs_sum = 0.0;
      for (std::size_t i : rows) {
        for (std::size_t j : cols) abs_sum += std::abs(x(i, j));
      }
      const double mean_abs =
          abs_sum / static_cast<double>(rows.size() * cols.size());
      if (mean_abs == 0.0 || mean_abs < options.flat_threshold) continue;
      out.biclusters.emplace_back(rows, cols);
    }
  }
  std::sort(out.biclusters.begin(), out.biclusters.end(),
            [](const Bicluster& a, const Bicluster& b) {
              if (a.rows.front() != b.rows.front()) {
                return a.rows.front() < b.rows.front();
              }
              return a.cols.front() < b.cols.front();
            });
  return out;
}

double DefaultFlatThreshold(const DenseMatrix& d) {
  return 0.5 * EstimateSigma(d);
}

DenseMatrix TopicEmbedding(const DenseMatrix& x, std::size_t d) {
  const std::size_t r = std::min(x.rows(), x.cols());
  if (d < 1 || d > r) {
    throw InvalidArgument("embedding dimension must lie in [1, " +
                          std::to_string(r) + "]");
  }
  const SvdFactors f = Svd(x);
  const auto dd = static_cast<Eigen::Index>(d);
  Eigen::MatrixXd emb =
      f.right_vectors.leftCols(dd) * f.singular_values.head(dd).asDiagonal();
  std::vector<std::string> labels = x.col_labels();
  return DenseMatrix(std::move(emb), std::move(labels), {});
}

}  // namespace lrsb
