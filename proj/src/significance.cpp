#include "lrsb/significance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace lrsb {

std::size_t NullModel::Level(double value) const {
  if (n_levels <= 1) return 0;
  const double lo = boundaries.front();
  const double width = (boundaries.back() - lo) / static_cast<double>(n_levels);
  const double pos = std::floor((value - lo) / width);
  if (pos <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(pos), n_levels - 1);
}

NullModel FitNull(const DenseMatrix& d, std::size_t n_levels) {
  if (n_levels < 2) throw InvalidArgument("FitNull: n_levels must be >= 2");
  if (d.empty()) throw InvalidArgument("FitNull: empty matrix");
  const double lo = d.values().minCoeff();
  const double hi = d.values().maxCoeff();

  NullModel model;
  model.n_rows = d.rows();
  if (!(hi > lo)) {
    model.degenerate = true;
    model.n_levels = 1;
    model.boundaries = {lo - 0.5, lo + 0.5};
    model.probabilities = Eigen::MatrixXd::Ones(static_cast<Eigen::Index>(d.cols()), 1);
    return model;
  }

  model.n_levels = n_levels;
  model.boundaries.resize(n_levels + 1);
  const double width = (hi - lo) / static_cast<double>(n_levels);
  for (std::size_t l = 0; l <= n_levels; ++l) {
    model.boundaries[l] = lo + width * static_cast<double>(l);
  }
  model.boundaries.back() = hi;

  const auto m = static_cast<Eigen::Index>(d.cols());
  const auto levels = static_cast<Eigen::Index>(n_levels);
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(m, levels);
  for (std::size_t i = 0; i < d.rows(); ++i) {
    for (std::size_t j = 0; j < d.cols(); ++j) {
      counts(static_cast<Eigen::Index>(j),
             static_cast<Eigen::Index>(model.Level(d(i, j)))) += 1.0;
    }
  }
  const double denom = static_cast<double>(d.rows() + n_levels);
  model.probabilities = (counts.array() + 1.0) / denom;
  return model;
}

double BinomialUpperTail(std::size_t n, std::size_t k, double q) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw InvalidArgument("BinomialUpperTail: q must lie in [0, 1]");
  }
  if (k == 0) return 1.0;
  if (k > n) return 0.0;
  if (q == 0.0) return 0.0;
  if (q == 1.0) return 1.0;

  const double nn = static_cast<double>(n);
  const double log_q = std::log(q);
  const double log_1mq = std::log1p(-q);
  const double log_n_fact = std::lgamma(nn + 1.0);
  std::vector<double> terms;
  terms.reserve(n - k + 1);
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t i = k; i <= n; ++i) {
    const double x = static_cast<double>(i);
    const double t = log_n_fact - std::lgamma(x + 1.0) -
                     std::lgamma(nn - x + 1.0) + x * log_q + (nn - x) * log_1mq;
    terms.push_back(t);
    peak = std::max(peak, t);
  }
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - peak);
  const double tail = std::exp(peak + std::log(sum));
  return std::clamp(tail, 0.0, 1.0);
}

double BiclusterPValue(const Bicluster& b, const DenseMatrix& d,
                       const NullModel& model) {
  if (b.rows.empty() || b.cols.empty()) {
    throw InvalidArgument("BiclusterPValue: empty bicluster");
  }
  if (b.rows.back() >= d.rows() || b.cols.back() >= d.cols()) {
    throw InvalidArgument("BiclusterPValue: bicluster outside the matrix");
  }
  if (static_cast<std::size_t>(model.probabilities.rows()) != d.cols()) {
    throw InvalidArgument("BiclusterPValue: null model fitted on another shape");
  }
  if (model.degenerate) return 1.0;

  double log_q = 0.0;
  std::vector<std::size_t> hist(model.n_levels);
  for (std::size_t j : b.cols) {
    std::fill(hist.begin(), hist.end(), 0);
    for (std::size_t i : b.rows) ++hist[model.Level(d(i, j))];
    const auto modal = static_cast<Eigen::Index>(
        std::max_element(hist.begin(), hist.end()) - hist.begin());
    log_q += std::log(model.probabilities(static_cast<Eigen::Index>(j), modal));
  }
  return BinomialUpperTail(d.rows(), b.rows.size(), std::exp(log_q));
}

BiclusterSet SignificanceReport::Survivors() const {
  BiclusterSet out({}, shape);
  for (const SignificanceEntry& e : results) {
    if (!e.pass) continue;
    Bicluster b = e.bicluster;
    b.p_value = e.p_value;
    out.biclusters.push_back(std::move(b));
  }
  return out;
}

SignificanceReport FilterBiclusters(const BiclusterSet& set,
                                    const DenseMatrix& d, double global_alpha,
                                    std::size_t n_levels) {
  if (!(global_alpha > 0.0 && global_alpha < 1.0)) {
    throw InvalidArgument("global alpha must lie in (0, 1)");
  }
  if (set.source_shape.rows != d.rows() || set.source_shape.cols != d.cols()) {
    throw InvalidArgument("bicluster set shape does not match the data matrix");
  }
  set.Validate();

  SignificanceReport report;
  report.global_alpha = global_alpha;
  report.shape = set.source_shape;
  report.n_tested = set.size();
  if (set.empty()) return report;

  const NullModel model = FitNull(d, n_levels);
  report.degenerate_null = model.degenerate;
  const double threshold = global_alpha / static_cast<double>(report.n_tested);
  for (const Bicluster& b : set.biclusters) {
    SignificanceEntry e;
    e.bicluster = b;
    e.p_value = BiclusterPValue(b, d, model);
    e.corrected_threshold = threshold;
    e.pass = e.p_value <= threshold;
    report.results.push_back(std::move(e));
  }
  return report;
}

}  // namespace lrsb
