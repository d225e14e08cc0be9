#pragma once

#include <cstddef>
#include <cstdint>

#include "lrsb/bicluster.hpp"
#include "lrsb/matrix.hpp"

namespace lrsb {

struct ExtractionOptions {
  /// Blocks whose mean |entry| falls below this are dropped as background.
  /// All-zero blocks are always dropped.
  double flat_threshold = 0.0;
};

/// Checkerboard extraction: k-means on the rows of X (k_rows groups) and on
/// its columns (k_cols groups); every non-flat row-group x column-group
/// block becomes a bicluster. Output is sorted by (first row, first col).
BiclusterSet ExtractBiclusters(const DenseMatrix& x, std::size_t k_rows,
                               std::size_t k_cols, std::uint64_t seed,
                               const ExtractionOptions& options = {});

/// Flat-block threshold used by the pipeline: 0.5 * sigma_hat(D).
double DefaultFlatThreshold(const DenseMatrix& d);

/// Per-column latent features: row j holds V(j, 0..d-1) scaled by
/// sigma_0..sigma_{d-1}. Column labels of X become row labels.
DenseMatrix TopicEmbedding(const DenseMatrix& x, std::size_t d);

}  // namespace lrsb
