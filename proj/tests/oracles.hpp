#pragma once

// Slow, obviously-correct reference implementations used to cross-check the
// library. Nothing here shares code with src/.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/special_functions/beta.hpp>

#include "lrsb/bicluster.hpp"
#include "lrsb/random.hpp"

namespace oracle {

using lrsb::Bicluster;
using lrsb::BiclusterSet;

// ---------------------------------------------------------------------------
// Random fixtures.

inline Eigen::MatrixXd RandomMatrix(std::size_t n, std::size_t m, std::uint64_t seed,
                                    double sd = 1.0) {
  lrsb::Rng rng(seed);
  Eigen::MatrixXd a(n, m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) a(i, j) = rng.Normal(0.0, sd);
  }
  return a;
}

// Random subset of {0..n-1} with between 1 and max_size members.
inline std::vector<std::size_t> RandomSubset(lrsb::Rng& rng, std::size_t n,
                                             std::size_t max_size) {
  const std::size_t size = 1 + rng.UniformIndex(std::min(n, max_size));
  std::vector<std::size_t> perm = rng.Permutation(n);
  perm.resize(size);
  return perm;
}

inline BiclusterSet RandomBiclusterSet(lrsb::Rng& rng, std::size_t n, std::size_t m,
                                       std::size_t max_count) {
  BiclusterSet s({}, {n, m});
  const std::size_t count = rng.UniformIndex(max_count + 1);
  for (std::size_t k = 0; k < count; ++k) {
    s.biclusters.emplace_back(RandomSubset(rng, n, n), RandomSubset(rng, m, m));
  }
  return s;
}

// ---------------------------------------------------------------------------
// Proximal operators by grid search.

// argmin_e 1/2 (y - e)^2 + beta |e| over a uniform grid containing 0.
inline double SoftThresholdByGrid(double y, double beta, double step = 1e-4) {
  const double span = std::abs(y) + 1.0;
  const long steps = static_cast<long>(std::ceil(span / step));
  double best = 0.0;
  double best_val = 0.5 * y * y;
  for (long i = -steps; i <= steps; ++i) {
    const double e = static_cast<double>(i) * step;
    const double v = 0.5 * (y - e) * (y - e) + beta * std::abs(e);
    if (v < best_val) {
      best_val = v;
      best = e;
    }
  }
  return best;
}

// argmin_{s >= 0} 1/2 (sigma - s)^2 + tau s over a uniform grid.
inline double ShrinkSingularValueByGrid(double sigma, double tau, double step = 1e-4) {
  const long steps = static_cast<long>(std::ceil((sigma + 1.0) / step));
  double best = 0.0;
  double best_val = 0.5 * sigma * sigma;
  for (long i = 0; i <= steps; ++i) {
    const double s = static_cast<double>(i) * step;
    const double v = 0.5 * (sigma - s) * (sigma - s) + tau * s;
    if (v < best_val) {
      best_val = v;
      best = s;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Binomial tail.

// P(Bin(n, q) >= k): every pmf term in long double, summed smallest first.
inline long double BinomialTailExact(std::size_t n, std::size_t k, double q) {
  if (k == 0) return 1.0L;
  if (k > n) return 0.0L;
  if (q <= 0.0) return 0.0L;
  if (q >= 1.0) return 1.0L;
  const long double ln = static_cast<long double>(n);
  std::vector<long double> terms;
  for (std::size_t i = k; i <= n; ++i) {
    const long double x = static_cast<long double>(i);
    const long double log_term = std::lgamma(ln + 1.0L) - std::lgamma(x + 1.0L) -
                                 std::lgamma(ln - x + 1.0L) +
                                 x * std::log(static_cast<long double>(q)) +
                                 (ln - x) * std::log1p(-static_cast<long double>(q));
    terms.push_back(std::exp(log_term));
  }
  std::sort(terms.begin(), terms.end());
  long double sum = 0.0L;
  for (long double t : terms) sum += t;
  return sum;
}

// Same tail through the regularized incomplete beta function.
inline double BinomialTailIbeta(std::size_t n, std::size_t k, double q) {
  if (k == 0) return 1.0;
  if (k > n) return 0.0;
  return boost::math::ibeta(static_cast<double>(k), static_cast<double>(n - k + 1), q);
}

// ---------------------------------------------------------------------------
// Bicluster metrics, by enumerating cells and assignments.

inline bool Has(const Bicluster& b, std::size_t i, std::size_t j) {
  return std::find(b.rows.begin(), b.rows.end(), i) != b.rows.end() &&
         std::find(b.cols.begin(), b.cols.end(), j) != b.cols.end();
}

inline std::vector<std::vector<bool>> CellMask(const Bicluster& b, std::size_t n,
                                               std::size_t m) {
  std::vector<std::vector<bool>> mask(n, std::vector<bool>(m, false));
  for (std::size_t i : b.rows) {
    for (std::size_t j : b.cols) mask[i][j] = true;
  }
  return mask;
}

inline double CellJaccard(const Bicluster& a, const Bicluster& b, std::size_t n,
                          std::size_t m) {
  const auto ma = CellMask(a, n, m);
  const auto mb = CellMask(b, n, m);
  double inter = 0, uni = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      inter += ma[i][j] && mb[i][j];
      uni += ma[i][j] || mb[i][j];
    }
  }
  return uni == 0 ? 0.0 : inter / uni;
}

inline double CellIntersection(const Bicluster& a, const Bicluster& b, std::size_t n,
                               std::size_t m) {
  const auto ma = CellMask(a, n, m);
  const auto mb = CellMask(b, n, m);
  double inter = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) inter += ma[i][j] && mb[i][j];
  }
  return inter;
}

inline std::pair<double, double> SetOverlap(const std::vector<std::size_t>& a,
                                            const std::vector<std::size_t>& b) {
  std::set<std::size_t> sa(a.begin(), a.end()), sb(b.begin(), b.end()), u = sa;
  u.insert(sb.begin(), sb.end());
  double inter = 0;
  for (std::size_t x : sa) inter += sb.count(x);
  return {inter, static_cast<double>(u.size())};
}

// 1 when both sides are empty, 0 when exactly one is, -1 otherwise.
inline int EmptyCase(const BiclusterSet& p, const BiclusterSet& r) {
  if (p.empty() && r.empty()) return 1;
  if (p.empty() || r.empty()) return 0;
  return -1;
}

inline double LiuWang(const BiclusterSet& p, const BiclusterSet& r) {
  if (int e = EmptyCase(p, r); e >= 0) return e;
  double total = 0;
  for (const Bicluster& ref : r.biclusters) {
    double best = 0;
    for (const Bicluster& pred : p.biclusters) {
      const auto [ri, ru] = SetOverlap(ref.rows, pred.rows);
      const auto [ci, cu] = SetOverlap(ref.cols, pred.cols);
      best = std::max(best, (ri + ci) / (ru + cu));
    }
    total += best;
  }
  return total / static_cast<double>(r.size());
}

inline double PrelicS(const BiclusterSet& a, const BiclusterSet& b) {
  double total = 0;
  for (const Bicluster& x : a.biclusters) {
    double best = 0;
    for (const Bicluster& y : b.biclusters) {
      const auto [in, un] = SetOverlap(x.rows, y.rows);
      best = std::max(best, in / un);
    }
    total += best;
  }
  return total / static_cast<double>(a.size());
}

inline double PrelicRelevance(const BiclusterSet& p, const BiclusterSet& r) {
  if (int e = EmptyCase(p, r); e >= 0) return e;
  return PrelicS(p, r);
}

inline double PrelicRecovery(const BiclusterSet& p, const BiclusterSet& r) {
  if (int e = EmptyCase(p, r); e >= 0) return e;
  return PrelicS(r, p);
}

// Pair counting over every pair of distinct cells covered by either side.
inline double Csi(const BiclusterSet& p, const BiclusterSet& r) {
  if (int e = EmptyCase(p, r); e >= 0) return e;
  const std::size_t n = p.source_shape.rows, m = p.source_shape.cols;
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      bool covered = false;
      for (const auto& b : p.biclusters) covered = covered || Has(b, i, j);
      for (const auto& b : r.biclusters) covered = covered || Has(b, i, j);
      if (covered) cells.emplace_back(i, j);
    }
  }
  double a = 0, bb = 0, c = 0, d = 0;
  for (std::size_t x = 0; x < cells.size(); ++x) {
    for (std::size_t y = x + 1; y < cells.size(); ++y) {
      double sp = 0, sr = 0;
      for (const auto& b : p.biclusters) {
        sp += Has(b, cells[x].first, cells[x].second) &&
              Has(b, cells[y].first, cells[y].second);
      }
      for (const auto& b : r.biclusters) {
        sr += Has(b, cells[x].first, cells[x].second) &&
              Has(b, cells[y].first, cells[y].second);
      }
      const double lo = std::min(sp, sr);
      a += lo;
      bb += sp - lo;
      c += sr - lo;
      d += (sp == 0 && sr == 0);
    }
  }
  const double denom = a + bb + c + d;
  return denom == 0 ? 1.0 : (a + d) / denom;
}

// Best total of w[i][perm(i)] over all injective maps from the smaller side.
inline double BestAssignmentExhaustive(const std::vector<std::vector<double>>& w) {
  const std::size_t rows = w.size();
  const std::size_t cols = rows == 0 ? 0 : w[0].size();
  if (rows == 0 || cols == 0) return 0.0;
  const bool transpose = rows > cols;
  const std::size_t small = transpose ? cols : rows;
  const std::size_t large = transpose ? rows : cols;
  std::vector<std::size_t> idx(large);
  std::iota(idx.begin(), idx.end(), 0);
  double best = -std::numeric_limits<double>::infinity();
  do {
    double total = 0;
    for (std::size_t s = 0; s < small; ++s) {
      total += transpose ? w[idx[s]][s] : w[s][idx[s]];
    }
    best = std::max(best, total);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return best;
}

inline double ClusteringErrorSimilarity(const BiclusterSet& p, const BiclusterSet& r) {
  if (int e = EmptyCase(p, r); e >= 0) return e;
  const std::size_t n = p.source_shape.rows, m = p.source_shape.cols;
  std::vector<std::vector<double>> w(p.size(), std::vector<double>(r.size()));
  for (std::size_t a = 0; a < p.size(); ++a) {
    for (std::size_t b = 0; b < r.size(); ++b) {
      w[a][b] = CellIntersection(p.biclusters[a], r.biclusters[b], n, m);
    }
  }
  const double dmax = BestAssignmentExhaustive(w);
  double uni = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      double cp = 0, cr = 0;
      for (const auto& b : p.biclusters) cp += Has(b, i, j);
      for (const auto& b : r.biclusters) cr += Has(b, i, j);
      uni += std::max(cp, cr);
    }
  }
  return dmax / uni;
}

inline double FabiaConsensus(const BiclusterSet& p, const BiclusterSet& r) {
  if (int e = EmptyCase(p, r); e >= 0) return e;
  const std::size_t n = p.source_shape.rows, m = p.source_shape.cols;
  std::vector<std::vector<double>> w(p.size(), std::vector<double>(r.size()));
  for (std::size_t a = 0; a < p.size(); ++a) {
    for (std::size_t b = 0; b < r.size(); ++b) {
      w[a][b] = CellJaccard(p.biclusters[a], r.biclusters[b], n, m);
    }
  }
  return BestAssignmentExhaustive(w) / static_cast<double>(std::max(p.size(), r.size()));
}

}  // namespace oracle
