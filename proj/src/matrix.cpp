#include "lrsb/matrix.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace lrsb {

DenseMatrix::DenseMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
  Validate();
}

DenseMatrix::DenseMatrix(Eigen::MatrixXd values,
                         std::vector<std::string> row_labels,
                         std::vector<std::string> col_labels)
    : values_(std::move(values)),
      row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)) {
  Validate();
}

DenseMatrix DenseMatrix::FromRowMajor(std::size_t rows, std::size_t cols,
                                      const std::vector<double>& values) {
  if (values.size() != rows * cols) {
    std::ostringstream msg;
    msg << "expected " << rows * cols << " values for a " << rows << "x"
        << cols << " matrix, got " << values.size();
    throw InvalidArgument(msg.str());
  }
  Eigen::MatrixXd m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          values[i * cols + j];
    }
  }
  return DenseMatrix(std::move(m));
}

DenseMatrix DenseMatrix::Zero(std::size_t rows, std::size_t cols) {
  return DenseMatrix(Eigen::MatrixXd::Zero(rows, cols));
}

DenseMatrix DenseMatrix::Identity(std::size_t n) {
  return DenseMatrix(Eigen::MatrixXd::Identity(n, n));
}

std::vector<double> DenseMatrix::RowMajor() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(values_.size()));
  for (Eigen::Index i = 0; i < values_.rows(); ++i) {
    for (Eigen::Index j = 0; j < values_.cols(); ++j) {
      out.push_back(values_(i, j));
    }
  }
  return out;
}

DenseMatrix DenseMatrix::WithValues(Eigen::MatrixXd values) const {
  if (values.rows() != values_.rows() || values.cols() != values_.cols()) {
    throw InvalidArgument("WithValues: shape mismatch");
  }
  return DenseMatrix(std::move(values), row_labels_, col_labels_);
}

void DenseMatrix::Validate() const {
  if (!values_.allFinite()) {
    for (Eigen::Index i = 0; i < values_.rows(); ++i) {
      for (Eigen::Index j = 0; j < values_.cols(); ++j) {
        if (!std::isfinite(values_(i, j))) {
          std::ostringstream msg;
          msg << "non-finite entry at (" << i << ", " << j << ")";
          throw InvalidArgument(msg.str());
        }
      }
    }
  }
  if (!row_labels_.empty() &&
      row_labels_.size() != static_cast<std::size_t>(values_.rows())) {
    throw InvalidArgument("row label count does not match row count");
  }
  if (!col_labels_.empty() &&
      col_labels_.size() != static_cast<std::size_t>(values_.cols())) {
    throw InvalidArgument("column label count does not match column count");
  }
}

Eigen::MatrixXd SvdFactors::Reconstruct() const {
  return left_vectors * singular_values.asDiagonal() *
         right_vectors.transpose();
}

SvdFactors Svd(const DenseMatrix& m) { return Svd(m.values()); }

SvdFactors Svd(const Eigen::MatrixXd& m) {
  const Eigen::Index r = std::min(m.rows(), m.cols());
  SvdFactors out;
  if (r == 0) {
    out.left_vectors.resize(m.rows(), 0);
    out.right_vectors.resize(m.cols(), 0);
    out.singular_values.resize(0);
    return out;
  }

  // One-sided Jacobi with QR preconditioning. The Jacobi sweeps are capped
  // internally by Eigen; a non-Success status is the convergence failure.
  Eigen::JacobiSVD<Eigen::MatrixXd, Eigen::ColPivHouseholderQRPreconditioner>
      svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success || !svd.singularValues().allFinite()) {
    std::ostringstream msg;
    msg << "SVD failed to converge for a " << m.rows() << "x" << m.cols()
        << " matrix";
    throw NumericalError(msg.str());
  }

  out.left_vectors = svd.matrixU();
  out.singular_values = svd.singularValues();
  out.right_vectors = svd.matrixV();

  for (Eigen::Index k = 0; k < r; ++k) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < out.left_vectors.rows(); ++i) {
      const double a = std::abs(out.left_vectors(i, k));
      // Near-ties resolve to the lowest index so roundoff cannot flip signs.
      if (a > best + 1e-12) {
        best = a;
        arg = i;
      }
    }
    if (out.left_vectors(arg, k) < 0.0) {
      out.left_vectors.col(k) *= -1.0;
      out.right_vectors.col(k) *= -1.0;
    }
  }
  return out;
}

double FrobeniusNorm(const DenseMatrix& m) { return m.values().norm(); }

double L1Norm(const DenseMatrix& m) { return m.values().cwiseAbs().sum(); }

double NuclearNorm(const DenseMatrix& m) {
  return Svd(m).singular_values.sum();
}

std::size_t NumericalRank(const Eigen::VectorXd& singular_values,
                          double relative_cutoff) {
  if (singular_values.size() == 0 || singular_values(0) <= 0.0) return 0;
  const double cutoff = relative_cutoff * singular_values(0);
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < singular_values.size(); ++i) {
    if (singular_values(i) > cutoff) ++rank;
  }
  return rank;
}

}  // namespace lrsb
