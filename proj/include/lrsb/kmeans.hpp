#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace lrsb {

struct KMeansOptions {
  std::size_t restarts = 10;
  std::size_t max_iters = 300;
};

struct KMeansResult {
  std::vector<std::size_t> assignment;  // cluster id in [0, k) per point
  Eigen::MatrixXd centers;              // k x dim
  double wcss = 0.0;
  std::size_t best_restart = 0;
};

/// Lloyd's algorithm with greedy k-means++ seeding (2 + floor(ln k) draws
/// per center); best of `restarts` by WCSS, ties to the lowest restart
/// index. Each row of `points` is one point.
///
/// Points are visited in a canonical order (sorted coordinate values, then
/// raw coordinates), so the result depends on the multiset of points and the
/// seed, not on the row order; permuting coordinates consistently also leaves
/// it unchanged barring ties in that key. An empty cluster is re-seeded with
/// the point farthest from its current center. Throws InvalidArgument unless
/// 1 <= k <= points.rows().
KMeansResult KMeans(const Eigen::MatrixXd& points, std::size_t k,
                    std::uint64_t seed, const KMeansOptions& options = {});

double Wcss(const Eigen::MatrixXd& points,
            const std::vector<std::size_t>& assignment, std::size_t k);

/// Mean silhouette coefficient; singleton clusters contribute 0.
double Silhouette(const Eigen::MatrixXd& points,
                  const std::vector<std::size_t>& assignment, std::size_t k);

/// Sweeps k over [k_min, k_max] (clamped to the point count) and returns the
/// k with the highest mean silhouette, smallest k on ties.
std::size_t ChooseKBySilhouette(const Eigen::MatrixXd& points, std::size_t k_min,
                                std::size_t k_max, std::uint64_t seed);

}  // namespace lrsb
