#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "lrsb/matrix.hpp"

namespace lrsb {

/// Weights and stopping rule for
///   min_{X,E} 1/2 ||D - X - E||_F^2 + alpha ||X||_* + beta ||E||_1.
struct RecoveryParams {
  double alpha = 1.0;
  double beta = 1.0;
  double tol = 1e-6;
  std::size_t max_iters = 500;

  /// Throws InvalidArgument unless alpha, beta, tol > 0 and max_iters >= 1.
  void Validate() const;

  /// alpha = (sqrt(n) + sqrt(m)) * sigma_hat(D); beta = lambda * alpha with
  /// lambda = 1/sqrt(m) unless given.
  static RecoveryParams FromData(const DenseMatrix& d,
                                 std::optional<double> lambda = std::nullopt);
};

struct RecoveryResult {
  DenseMatrix low_rank;
  DenseMatrix sparse;
  DenseMatrix residual;  // D - low_rank - sparse
  std::vector<double> objective_trace;
  std::size_t iterations = 0;
  bool converged = false;
  /// Singular values of low_rank (already thresholded).
  Eigen::VectorXd low_rank_singular_values;
};

struct IterationInfo {
  std::size_t iteration;
  double objective;
  double rel_change_low_rank;
  double rel_change_sparse;
};

struct RecoveryOptions {
  /// Starting sparse component; zero when absent.
  std::optional<DenseMatrix> initial_sparse;
  /// Called once per full alternation from the solver's thread.
  std::function<void(const IterationInfo&)> progress;
};

/// 1.48 * median(|D - median(D)|), medians taken over all entries.
double EstimateSigma(const DenseMatrix& d);
double DefaultAlpha(std::size_t n_rows, std::size_t n_cols, double sigma);
double DefaultLambda(std::size_t n_cols);

/// Singular value thresholding: sum_i (sigma_i - tau)_+ u_i v_i^T.
DenseMatrix Svt(const DenseMatrix& m, double tau);
/// Entrywise sign(m) * (|m| - beta)_+.
DenseMatrix SoftThreshold(const DenseMatrix& m, double beta);

double Objective(const DenseMatrix& d, const DenseMatrix& x,
                 const DenseMatrix& e, double alpha, double beta);

/// Alternates X <- Svt(D - E, alpha), E <- SoftThreshold(D - X, beta) until
/// max(relative change of X, relative change of E) < tol, or max_iters.
///
/// Throws NumericalError if an SVD fails (message carries the iteration) or
/// the objective becomes non-finite.
RecoveryResult Recover(const DenseMatrix& d, const RecoveryParams& params,
                       const RecoveryOptions& options = {});

}  // namespace lrsb
