#pragma once

#include <cstddef>

#include "lrsb/bicluster.hpp"
#include "lrsb/matrix.hpp"

namespace lrsb {

/// External bicluster scores, all oriented so that larger is better and
/// identical non-empty inputs score 1.
///
/// Empty-input conventions: when both sides are empty every score is 1
/// (vacuous agreement); when exactly one side is empty every score is 0.
struct MetricReport {
  double liu_wang = 0.0;
  double prelic_recovery = 0.0;
  double prelic_relevance = 0.0;
  double csi = 0.0;
  double clustering_error_similarity = 0.0;
  double fabia_consensus = 0.0;
};

struct SparsePRF {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t true_positives = 0;
  std::size_t false_positives = 0;
  std::size_t false_negatives = 0;
};

/// |cells(a) & cells(b)| / |cells(a) | cells(b)| over row x column cells.
double Jaccard(const Bicluster& a, const Bicluster& b);

/// Mean over references of the best (|rows&| + |cols&|) / (|rows|| + |cols||)
/// against any prediction.
double LiuWangMatch(const BiclusterSet& predicted, const BiclusterSet& reference);

struct PrelicScores {
  double relevance = 0.0;  // predicted -> reference
  double recovery = 0.0;   // reference -> predicted
};
/// Row-set match score S(A, B) = mean_a max_b rowJaccard(a, b).
PrelicScores Prelic(const BiclusterSet& predicted, const BiclusterSet& reference);

/// Pair-counting (Rand-type) agreement for overlapping memberships, over
/// pairs of distinct cells covered by either collection. For cells p, q let
/// s_P, s_R be the number of biclusters of each side containing both:
///   a += min(s_P, s_R), b += s_P - min, c += s_R - min,
///   d += [s_P == 0 and s_R == 0];  CSI = (a + d) / (a + b + c + d).
double Csi(const BiclusterSet& predicted, const BiclusterSet& reference);

/// 1 - CE: D_max / |U|, with D_max the best one-to-one total of cell
/// intersections and |U| = sum over cells of max(cover_P, cover_R).
double ClusteringErrorSimilarity(const BiclusterSet& predicted,
                                 const BiclusterSet& reference);

/// Optimal one-to-one matching of cell-Jaccard similarities, summed and
/// divided by max(|P|, |R|).
double FabiaConsensus(const BiclusterSet& predicted, const BiclusterSet& reference);

MetricReport EvaluateBiclusters(const BiclusterSet& predicted,
                                const BiclusterSet& reference);

/// Entries with |E_ij| > threshold.
SpikeMask PredictedSpikeMask(const DenseMatrix& sparse, double threshold = 1e-6);

SparsePRF SparsePrf(const SpikeMask& predicted, const SpikeMask& truth);

}  // namespace lrsb
