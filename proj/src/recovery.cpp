#include "lrsb/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace lrsb {
namespace {

double Median(std::vector<double> v) {
  const std::size_t n = v.size();
  const std::size_t mid = n / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid),
                   v.end());
  const double upper = v[mid];
  if (n % 2 == 1) return upper;
  const double lower =
      *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

struct ThresholdedSvd {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd singular_values;
};

ThresholdedSvd SvtImpl(const Eigen::MatrixXd& m, double tau) {
  const SvdFactors f = Svd(m);
  Eigen::VectorXd shrunk = (f.singular_values.array() - tau).max(0.0);
  Eigen::Index keep = 0;
  while (keep < shrunk.size() && shrunk(keep) > 0.0) ++keep;
  ThresholdedSvd out;
  out.matrix = f.left_vectors.leftCols(keep) *
               shrunk.head(keep).asDiagonal() *
               f.right_vectors.leftCols(keep).transpose();
  out.singular_values = std::move(shrunk);
  return out;
}

Eigen::MatrixXd ShrinkImpl(const Eigen::MatrixXd& m, double beta) {
  return m.unaryExpr([beta](double v) {
    const double mag = std::abs(v) - beta;
    if (mag <= 0.0) return 0.0;
    return v > 0.0 ? mag : -mag;
  });
}

double RelativeChange(const Eigen::MatrixXd& prev, const Eigen::MatrixXd& cur) {
  const double diff = (cur - prev).norm();
  if (diff == 0.0) return 0.0;
  return diff / std::max(cur.norm(), prev.norm());
}

void RequireSameShape(const DenseMatrix& a, const DenseMatrix& b,
                      const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    std::ostringstream msg;
    msg << what << ": shape " << b.rows() << "x" << b.cols()
        << " does not match " << a.rows() << "x" << a.cols();
    throw InvalidArgument(msg.str());
  }
}

}  // namespace

void RecoveryParams::Validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidArgument("alpha must be positive and finite");
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw InvalidArgument("beta must be positive and finite");
  }
  if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
  if (max_iters < 1) throw InvalidArgument("max_iters must be at least 1");
}

RecoveryParams RecoveryParams::FromData(const DenseMatrix& d,
                                        std::optional<double> lambda) {
  RecoveryParams p;
  p.alpha = DefaultAlpha(d.rows(), d.cols(), EstimateSigma(d));
  p.beta = lambda.value_or(DefaultLambda(d.cols())) * p.alpha;
  return p;
}

double EstimateSigma(const DenseMatrix& d) {
  if (d.empty()) throw InvalidArgument("EstimateSigma: empty matrix");
  std::vector<double> v = d.RowMajor();
  const double med = Median(v);
  for (double& x : v) x = std::abs(x - med);
  return 1.48 * Median(std::move(v));
}

double DefaultAlpha(std::size_t n_rows, std::size_t n_cols, double sigma) {
  if (n_rows < 1 || n_cols < 1) {
    throw InvalidArgument("DefaultAlpha: dimensions must be >= 1");
  }
  if (sigma < 0.0) throw InvalidArgument("DefaultAlpha: sigma must be >= 0");
  return (std::sqrt(static_cast<double>(n_rows)) +
          std::sqrt(static_cast<double>(n_cols))) *
         sigma;
}

double DefaultLambda(std::size_t n_cols) {
  if (n_cols < 1) throw InvalidArgument("DefaultLambda: n_cols must be >= 1");
  return 1.0 / std::sqrt(static_cast<double>(n_cols));
}

DenseMatrix Svt(const DenseMatrix& m, double tau) {
  if (tau < 0.0) throw InvalidArgument("Svt: tau must be >= 0");
  return m.WithValues(SvtImpl(m.values(), tau).matrix);
}

DenseMatrix SoftThreshold(const DenseMatrix& m, double beta) {
  if (beta < 0.0) throw InvalidArgument("SoftThreshold: beta must be >= 0");
  return m.WithValues(ShrinkImpl(m.values(), beta));
}

double Objective(const DenseMatrix& d, const DenseMatrix& x,
                 const DenseMatrix& e, double alpha, double beta) {
  RequireSameShape(d, x, "Objective (X)");
  RequireSameShape(d, e, "Objective (E)");
  const double fit = (d.values() - x.values() - e.values()).squaredNorm();
  return 0.5 * fit + alpha * NuclearNorm(x) + beta * L1Norm(e);
}

RecoveryResult Recover(const DenseMatrix& d, const RecoveryParams& params,
                       const RecoveryOptions& options) {
  params.Validate();
  const Eigen::MatrixXd& data = d.values();

  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(data.rows(), data.cols());
  if (options.initial_sparse) {
    RequireSameShape(d, *options.initial_sparse, "Recover (initial sparse)");
    e = options.initial_sparse->values();
  }
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(data.rows(), data.cols());
  Eigen::VectorXd x_singular;

  RecoveryResult result;
  for (std::size_t iter = 1; iter <= params.max_iters; ++iter) {
    ThresholdedSvd step;
    try {
      step = SvtImpl(data - e, params.alpha);
    } catch (const NumericalError& err) {
      throw NumericalError("recovery aborted at iteration " +
                           std::to_string(iter) + ": " + err.what());
    }
    Eigen::MatrixXd e_next = ShrinkImpl(data - step.matrix, params.beta);

    const double dx = RelativeChange(x, step.matrix);
    const double de = RelativeChange(e, e_next);
    x = std::move(step.matrix);
    x_singular = std::move(step.singular_values);
    e = std::move(e_next);

    const double obj = 0.5 * (data - x - e).squaredNorm() +
                       params.alpha * x_singular.sum() +
                       params.beta * e.cwiseAbs().sum();
    if (!std::isfinite(obj)) {
      throw NumericalError("recovery aborted at iteration " +
                           std::to_string(iter) +
                           ": non-finite objective (check alpha/beta)");
    }
    result.objective_trace.push_back(obj);
    result.iterations = iter;
    if (options.progress) options.progress({iter, obj, dx, de});

    if (std::max(dx, de) < params.tol) {
      result.converged = true;
      break;
    }
  }

  Eigen::MatrixXd residual = data - x - e;
  result.low_rank = d.WithValues(std::move(x));
  result.sparse = d.WithValues(std::move(e));
  result.residual = d.WithValues(std::move(residual));
  result.low_rank_singular_values = std::move(x_singular);
  return result;
}

}  // namespace lrsb
