#include "lrsb/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "lrsb/matrix.hpp"
#include "lrsb/random.hpp"

namespace lrsb {
namespace {

struct RunResult {
  std::vector<std::size_t> assignment;
  Eigen::MatrixXd centers;
  double wcss;
};

std::size_t Nearest(const Eigen::MatrixXd& centers, const Eigen::RowVectorXd& p,
                    double* dist2) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (Eigen::Index c = 0; c < centers.rows(); ++c) {
    const double d = (centers.row(c) - p).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = static_cast<std::size_t>(c);
    }
  }
  if (dist2) *dist2 = best_d;
  return best;
}

// D^2-weighted draw over points with positive weight.
std::size_t SampleByWeight(const std::vector<double>& d2, double total, Rng& rng) {
  double target = rng.Uniform01() * total;
  std::size_t pick = d2.size() - 1;
  for (std::size_t i = 0; i < d2.size(); ++i) {
    if (d2[i] <= 0.0) continue;
    target -= d2[i];
    if (target < 0.0) {
      pick = i;
      break;
    }
  }
  while (d2[pick] <= 0.0 && pick > 0) --pick;
  return pick;
}

// Greedy k-means++: each new center is the best of 2 + floor(ln k) weighted
// draws by resulting potential.
Eigen::MatrixXd SeedPlusPlus(const Eigen::MatrixXd& pts, std::size_t k,
                             Rng& rng) {
  const auto n = pts.rows();
  const std::size_t trials =
      2 + static_cast<std::size_t>(std::floor(std::log(static_cast<double>(k))));
  Eigen::MatrixXd centers(static_cast<Eigen::Index>(k), pts.cols());
  std::vector<bool> taken(static_cast<std::size_t>(n), false);
  std::size_t first = rng.UniformIndex(static_cast<std::uint64_t>(n));
  centers.row(0) = pts.row(static_cast<Eigen::Index>(first));
  taken[first] = true;

  auto distances_to = [&](std::size_t c) {
    std::vector<double> d(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
      d[static_cast<std::size_t>(i)] =
          (pts.row(i) - pts.row(static_cast<Eigen::Index>(c))).squaredNorm();
    }
    return d;
  };
  std::vector<double> d2 = distances_to(first);
  for (std::size_t c = 1; c < k; ++c) {
    const double total = std::accumulate(d2.begin(), d2.end(), 0.0);
    std::size_t pick = 0;
    if (total > 0.0) {
      double best_potential = std::numeric_limits<double>::infinity();
      std::vector<double> best_d2;
      for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t cand = SampleByWeight(d2, total, rng);
        std::vector<double> d = distances_to(cand);
        double potential = 0.0;
        for (std::size_t i = 0; i < d.size(); ++i) {
          d[i] = std::min(d[i], d2[i]);
          potential += d[i];
        }
        if (potential < best_potential) {
          best_potential = potential;
          pick = cand;
          best_d2 = std::move(d);
        }
      }
      d2 = std::move(best_d2);
    } else {
      // Every point coincides with a center; take any unused one.
      std::vector<std::size_t> free;
      for (std::size_t i = 0; i < taken.size(); ++i) {
        if (!taken[i]) free.push_back(i);
      }
      pick = free[rng.UniformIndex(free.size())];
    }
    taken[pick] = true;
    centers.row(static_cast<Eigen::Index>(c)) =
        pts.row(static_cast<Eigen::Index>(pick));
  }
  return centers;
}

RunResult Lloyd(const Eigen::MatrixXd& pts, std::size_t k, Rng& rng,
                std::size_t max_iters) {
  const auto n = static_cast<std::size_t>(pts.rows());
  Eigen::MatrixXd centers = SeedPlusPlus(pts, k, rng);
  std::vector<std::size_t> assign(n, k);
  std::vector<double> dist(n, 0.0);

  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t c =
          Nearest(centers, pts.row(static_cast<Eigen::Index>(i)), &dist[i]);
      if (c != assign[i]) {
        assign[i] = c;
        changed = true;
      }
    }

    std::vector<std::size_t> counts(k, 0);
    for (std::size_t c : assign) ++counts[c];
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      // Move the worst-fit point (from a cluster that can spare it).
      std::size_t far = n;
      double far_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (counts[assign[i]] > 1 && dist[i] > far_d) {
          far_d = dist[i];
          far = i;
        }
      }
      if (far == n) break;
      --counts[assign[far]];
      assign[far] = c;
      counts[c] = 1;
      dist[far] = 0.0;
      changed = true;
    }

    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k),
                                                 pts.cols());
    for (std::size_t i = 0; i < n; ++i) {
      sums.row(static_cast<Eigen::Index>(assign[i])) +=
          pts.row(static_cast<Eigen::Index>(i));
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        centers.row(static_cast<Eigen::Index>(c)) =
            sums.row(static_cast<Eigen::Index>(c)) / static_cast<double>(counts[c]);
      }
    }
    if (!changed) break;
  }
  return {assign, centers, Wcss(pts, assign, k)};
}

}  // namespace

double Wcss(const Eigen::MatrixXd& points,
            const std::vector<std::size_t>& assignment, std::size_t k) {
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(k),
                                               points.cols());
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    sums.row(static_cast<Eigen::Index>(assignment[i])) +=
        points.row(static_cast<Eigen::Index>(i));
    ++counts[assignment[i]];
  }
  double total = 0.0;
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    const auto c = static_cast<Eigen::Index>(assignment[i]);
    const Eigen::RowVectorXd center =
        sums.row(c) / static_cast<double>(counts[assignment[i]]);
    total += (points.row(static_cast<Eigen::Index>(i)) - center).squaredNorm();
  }
  return total;
}

KMeansResult KMeans(const Eigen::MatrixXd& points, std::size_t k,
                    std::uint64_t seed, const KMeansOptions& options) {
  const auto n = static_cast<std::size_t>(points.rows());
  if (k < 1 || k > n) {
    throw InvalidArgument("KMeans: k = " + std::to_string(k) +
                          " must lie in [1, " + std::to_string(n) + "]");
  }
  if (options.restarts < 1) throw InvalidArgument("KMeans: restarts must be >= 1");

  // Canonical visiting order: by the sorted coordinate values, then by the
  // raw coordinates. The first key does not change when the coordinates are
  // permuted, so relabeling rows or columns of the data leaves it intact.
  std::vector<std::vector<double>> raw(n), keys(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = points.row(static_cast<Eigen::Index>(i));
    raw[i].assign(row.begin(), row.end());
    keys[i] = raw[i];
    std::sort(keys[i].begin(), keys[i].end());
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (keys[a] != keys[b]) return keys[a] < keys[b];
    return raw[a] < raw[b];
  });
  Eigen::MatrixXd sorted(points.rows(), points.cols());
  for (std::size_t i = 0; i < n; ++i) {
    sorted.row(static_cast<Eigen::Index>(i)) =
        points.row(static_cast<Eigen::Index>(order[i]));
  }

  RunResult best;
  std::size_t best_restart = 0;
  best.wcss = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < options.restarts; ++r) {
    Rng rng(StageSeed(seed, "kmeans-restart-" + std::to_string(r)));
    RunResult run = Lloyd(sorted, k, rng, options.max_iters);
    if (run.wcss < best.wcss) {
      best = std::move(run);
      best_restart = r;
    }
  }

  KMeansResult out;
  out.assignment.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.assignment[order[i]] = best.assignment[i];
  out.centers = std::move(best.centers);
  out.wcss = best.wcss;
  out.best_restart = best_restart;
  return out;
}

double Silhouette(const Eigen::MatrixXd& points,
                  const std::vector<std::size_t>& assignment, std::size_t k) {
  const std::size_t n = assignment.size();
  if (n == 0 || k < 2) return 0.0;
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t c : assignment) ++counts[c];

  double total = 0.0;
  std::vector<double> dsum(k);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(dsum.begin(), dsum.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      dsum[assignment[j]] += (points.row(static_cast<Eigen::Index>(i)) -
                              points.row(static_cast<Eigen::Index>(j)))
                                 .norm();
    }
    const std::size_t own = assignment[i];
    if (counts[own] <= 1) continue;
    const double a = dsum[own] / static_cast<double>(counts[own] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < k; ++c) {
      if (c == own || counts[c] == 0) continue;
      b = std::min(b, dsum[c] / static_cast<double>(counts[c]));
    }
    if (!std::isfinite(b)) continue;
    const double denom = std::max(a, b);
    if (denom > 0.0) total += (b - a) / denom;
  }
  return total / static_cast<double>(n);
}

std::size_t ChooseKBySilhouette(const Eigen::MatrixXd& points, std::size_t k_min,
                                std::size_t k_max, std::uint64_t seed) {
  const auto n = static_cast<std::size_t>(points.rows());
  k_min = std::max<std::size_t>(k_min, 2);
  k_max = std::min(k_max, n > 1 ? n - 1 : 1);
  if (k_min > k_max) return 1;
  std::size_t best_k = k_min;
  double best_s = -std::numeric_limits<double>::infinity();
  for (std::size_t k = k_min; k <= k_max; ++k) {
    const KMeansResult r =
        KMeans(points, k, StageSeed(seed, "silhouette-" + std::to_string(k)));
    const double s = Silhouette(points, r.assignment, k);
    if (s > best_s) {
      best_s = s;
      best_k = k;
    }
  }
  return best_k;
}

}  // namespace lrsb
