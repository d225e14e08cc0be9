#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace lrsb {

/// Raised when a linear-algebra kernel fails to produce a usable result.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised on shape or value precondition violations.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Boolean mask with the shape of a data matrix (spike positions).
using SpikeMask = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Dense real n x m matrix (students x topics) with optional labels.
///
/// Immutable after construction. All entries are finite; the constructor
/// rejects NaN and Inf so downstream thresholds never see them.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(Eigen::MatrixXd values);
  DenseMatrix(Eigen::MatrixXd values, std::vector<std::string> row_labels,
              std::vector<std::string> col_labels);

  /// Builds from row-major values; `values.size()` must equal rows * cols.
  static DenseMatrix FromRowMajor(std::size_t rows, std::size_t cols,
                                  const std::vector<double>& values);
  static DenseMatrix Zero(std::size_t rows, std::size_t cols);
  static DenseMatrix Identity(std::size_t n);

  std::size_t rows() const { return static_cast<std::size_t>(values_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(values_.cols()); }
  bool empty() const { return values_.size() == 0; }

  double operator()(std::size_t i, std::size_t j) const {
    return values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  const Eigen::MatrixXd& values() const { return values_; }
  std::vector<double> RowMajor() const;

  const std::vector<std::string>& row_labels() const { return row_labels_; }
  const std::vector<std::string>& col_labels() const { return col_labels_; }
  bool has_row_labels() const { return !row_labels_.empty(); }
  bool has_col_labels() const { return !col_labels_.empty(); }

  /// Same labels, new values of identical shape.
  DenseMatrix WithValues(Eigen::MatrixXd values) const;

 private:
  void Validate() const;

  Eigen::MatrixXd values_;
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
};

/// Thin SVD with r = min(rows, cols), singular values sorted non-increasing.
///
/// Sign convention: the largest-magnitude entry of every left singular
/// vector is positive (ties resolved toward the lowest row index); the
/// matching right vector is flipped along with it.
struct SvdFactors {
  Eigen::MatrixXd left_vectors;
  Eigen::VectorXd singular_values;
  Eigen::MatrixXd right_vectors;

  std::size_t rank() const {
    return static_cast<std::size_t>(singular_values.size());
  }
  Eigen::MatrixXd Reconstruct() const;
};

SvdFactors Svd(const DenseMatrix& m);
SvdFactors Svd(const Eigen::MatrixXd& m);

double FrobeniusNorm(const DenseMatrix& m);
double L1Norm(const DenseMatrix& m);
double NuclearNorm(const DenseMatrix& m);

/// Number of singular values strictly above `relative_cutoff * sigma_1`.
std::size_t NumericalRank(const Eigen::VectorXd& singular_values,
                          double relative_cutoff = 1e-8);

}  // namespace lrsb
