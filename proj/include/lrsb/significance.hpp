#pragma once

#include <cstddef>
#include <vector>

#include "lrsb/bicluster.hpp"
#include "lrsb/matrix.hpp"

namespace lrsb {

/// Discretized per-column background distribution of a data matrix.
///
/// Values are binned into `n_levels` equal-width levels spanning
/// [min(D), max(D)]; each column gets add-one smoothed level frequencies
/// (count + 1) / (n_rows + n_levels). A constant matrix yields a single-level
/// model flagged `degenerate`.
struct NullModel {
  std::size_t n_levels = 0;
  std::vector<double> boundaries;  // n_levels + 1, increasing
  Eigen::MatrixXd probabilities;   // n_cols x n_levels
  std::size_t n_rows = 0;
  bool degenerate = false;

  std::size_t Level(double value) const;
};

NullModel FitNull(const DenseMatrix& d, std::size_t n_levels);

/// P(Binomial(n, q) >= k), summed in log space.
double BinomialUpperTail(std::size_t n, std::size_t k, double q);

/// Significance of a bicluster under the null model.
///
/// This stands in for a full coherence-specific test (constant, additive
/// and multiplicative patterns each get their own statistic there). Here,
/// every bicluster is treated as a constant-pattern-per-column test:
///   1. pattern(j) = modal level of column j over the bicluster's rows
///      (lowest level on ties);
///   2. q = prod_j P_null[j][pattern(j)], the chance that one random row
///      reproduces the pattern on the bicluster's columns, with columns
///      assumed independent;
///   3. p = P(Binomial(n_rows, q) >= |rows|).
/// A degenerate null model gives p = 1.
double BiclusterPValue(const Bicluster& b, const DenseMatrix& d,
                       const NullModel& model);

struct SignificanceEntry {
  Bicluster bicluster;
  double p_value = 1.0;
  double corrected_threshold = 0.0;
  bool pass = false;
};

struct SignificanceReport {
  std::vector<SignificanceEntry> results;
  std::size_t n_tested = 0;
  double global_alpha = 0.05;
  bool degenerate_null = false;
  Shape shape;

  /// Passing biclusters, each carrying its p-value.
  BiclusterSet Survivors() const;
};

/// Fits the null on D, scores every candidate and keeps those with
/// p <= global_alpha / n_tested (Bonferroni).
SignificanceReport FilterBiclusters(const BiclusterSet& set,
                                    const DenseMatrix& d, double global_alpha,
                                    std::size_t n_levels = 10);

}  // namespace lrsb
