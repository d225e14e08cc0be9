#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "lrsb/hungarian.hpp"
#include "lrsb/metrics.hpp"
#include "lrsb/random.hpp"
#include "oracles.hpp"

using namespace lrsb;

namespace {

std::vector<std::size_t> Range(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> v;
  for (std::size_t i = lo; i < hi; ++i) v.push_back(i);
  return v;
}

void CheckAllOnes(const MetricReport& m) {
  CHECK(m.liu_wang == 1.0);
  CHECK(m.prelic_recovery == 1.0);
  CHECK(m.prelic_relevance == 1.0);
  CHECK(m.csi == 1.0);
  CHECK(m.clustering_error_similarity == 1.0);
  CHECK(m.fabia_consensus == 1.0);
}

void CheckAgainstOracle(const BiclusterSet& p, const BiclusterSet& r) {
  const MetricReport m = EvaluateBiclusters(p, r);
  CHECK(std::abs(m.liu_wang - oracle::LiuWang(p, r)) <= 1e-9);
  CHECK(std::abs(m.prelic_relevance - oracle::PrelicRelevance(p, r)) <= 1e-9);
  CHECK(std::abs(m.prelic_recovery - oracle::PrelicRecovery(p, r)) <= 1e-9);
  CHECK(std::abs(m.csi - oracle::Csi(p, r)) <= 1e-9);
  CHECK(std::abs(m.clustering_error_similarity - oracle::ClusteringErrorSimilarity(p, r)) <=
        1e-9);
  CHECK(std::abs(m.fabia_consensus - oracle::FabiaConsensus(p, r)) <= 1e-9);
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("jaccard") {
  const Bicluster a({0, 1}, {0, 1});
  CHECK(Jaccard(a, a) == 1.0);
  CHECK(Jaccard(a, Bicluster({2, 3}, {2})) == 0.0);
  CHECK(Jaccard(a, Bicluster({0}, {0, 1})) == 0.5);
  CHECK(Jaccard(a, Bicluster({0}, {0, 1})) == oracle::CellJaccard(a, Bicluster({0}, {0, 1}), 4, 4));
}

TEST_CASE("liu wang") {
  const Shape s{10, 10};
  const BiclusterSet r({Bicluster(Range(0, 5), Range(0, 5))}, s);
  CHECK(LiuWangMatch(r, r) == 1.0);
  CHECK(LiuWangMatch(BiclusterSet({}, s), r) == 0.0);
  // 3 shared rows of 5, all 5 columns: (3 + 5) / (5 + 5).
  const BiclusterSet p({Bicluster({0, 1, 2}, Range(0, 5))}, s);
  CHECK(LiuWangMatch(p, r) == doctest::Approx(0.8));
  CHECK(LiuWangMatch(p, r) == doctest::Approx(oracle::LiuWang(p, r)));
}

TEST_CASE("prelic") {
  const Shape s{10, 6};
  const BiclusterSet r({Bicluster({0, 1}, {0}), Bicluster({5, 6}, {1})}, s);
  const BiclusterSet p({Bicluster({0, 1}, {3})}, s);
  const PrelicScores sc = Prelic(p, r);
  CHECK(sc.relevance == 1.0);
  CHECK(sc.recovery == 0.5);
  const PrelicScores same = Prelic(r, r);
  CHECK(same.relevance == 1.0);
  CHECK(same.recovery == 1.0);
  const PrelicScores empty = Prelic(BiclusterSet({}, s), r);
  CHECK(empty.relevance == 0.0);
  CHECK(empty.recovery == 0.0);
  // Duality.
  const PrelicScores rev = Prelic(r, p);
  CHECK(rev.relevance == sc.recovery);
  CHECK(rev.recovery == sc.relevance);
}

TEST_CASE("csi") {
  const Shape s{8, 6};
  const BiclusterSet r({Bicluster({0, 1, 2}, {0, 1}), Bicluster({4, 5}, {3, 4, 5})}, s);
  CHECK(Csi(r, r) == 1.0);
  CHECK(Csi(BiclusterSet({}, s), BiclusterSet({}, s)) == 1.0);
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    BiclusterSet p({}, s), q({}, s);
    for (int k = 0; k < 2; ++k) {
      p.biclusters.emplace_back(oracle::RandomSubset(rng, 8, 4), oracle::RandomSubset(rng, 6, 3));
      q.biclusters.emplace_back(oracle::RandomSubset(rng, 8, 4), oracle::RandomSubset(rng, 6, 3));
    }
    CHECK(std::abs(Csi(p, q) - oracle::Csi(p, q)) <= 1e-9);
  }
}

TEST_CASE("clustering error similarity") {
  const Shape s{4, 4};
  const BiclusterSet r({Bicluster({0, 1}, {0, 1})}, s);
  CHECK(ClusteringErrorSimilarity(r, r) == 1.0);
  CHECK(ClusteringErrorSimilarity(BiclusterSet({Bicluster({2, 3}, {2, 3})}, s), r) == 0.0);
  // 4 shared cells out of 8 covered.
  const BiclusterSet half_a({Bicluster({0, 1}, {0, 1, 2})}, s);
  const BiclusterSet half_b({Bicluster({0, 1}, {1, 2, 3})}, s);
  CHECK(ClusteringErrorSimilarity(half_a, half_b) == doctest::Approx(0.5));
  CHECK(ClusteringErrorSimilarity(BiclusterSet({}, s), BiclusterSet({}, s)) == 1.0);
}

TEST_CASE("fabia consensus") {
  const Shape s{10, 10};
  const BiclusterSet r({Bicluster({0, 1}, {0, 1}), Bicluster({4, 5}, {4, 5})}, s);
  CHECK(FabiaConsensus(r, r) == 1.0);
  BiclusterSet p = r;
  p.biclusters.emplace_back(std::vector<std::size_t>{8}, std::vector<std::size_t>{8});
  p.biclusters.emplace_back(std::vector<std::size_t>{9}, std::vector<std::size_t>{9});
  CHECK(FabiaConsensus(p, r) == 0.5);
  CHECK(FabiaConsensus(BiclusterSet({}, s), BiclusterSet({}, s)) == 1.0);
  CHECK(FabiaConsensus(BiclusterSet({}, s), r) == 0.0);
  CHECK(FabiaConsensus(r, BiclusterSet({}, s)) == 0.0);
}

TEST_CASE("empty-side conventions apply to every metric") {
  const Shape s{5, 5};
  const BiclusterSet e({}, s);
  const BiclusterSet one({Bicluster({0}, {0})}, s);
  CheckAllOnes(EvaluateBiclusters(e, e));
  const MetricReport m = EvaluateBiclusters(one, e);
  CHECK(m.liu_wang == 0.0);
  CHECK(m.prelic_recovery == 0.0);
  CHECK(m.prelic_relevance == 0.0);
  CHECK(m.csi == 0.0);
  CHECK(m.clustering_error_similarity == 0.0);
  CHECK(m.fabia_consensus == 0.0);
}

TEST_CASE("metrics match brute force on seeded fixtures") {
  Rng rng(2024);
  for (int t = 0; t < 60; ++t) {
    CAPTURE(t);
    const BiclusterSet p = oracle::RandomBiclusterSet(rng, 10, 8, 4);
    const BiclusterSet r = oracle::RandomBiclusterSet(rng, 10, 8, 4);
    CheckAgainstOracle(p, r);
    if (!p.empty()) CheckAllOnes(EvaluateBiclusters(p, p));
  }
}

TEST_CASE("metrics lie in [0, 1] and ignore bicluster order") {
  Rng rng(9);
  for (int t = 0; t < 30; ++t) {
    BiclusterSet p = oracle::RandomBiclusterSet(rng, 12, 9, 5);
    const BiclusterSet r = oracle::RandomBiclusterSet(rng, 12, 9, 5);
    const MetricReport a = EvaluateBiclusters(p, r);
    for (double v : {a.liu_wang, a.prelic_recovery, a.prelic_relevance, a.csi,
                     a.clustering_error_similarity, a.fabia_consensus}) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    std::reverse(p.biclusters.begin(), p.biclusters.end());
    const MetricReport b = EvaluateBiclusters(p, r);
    CHECK(b.liu_wang == doctest::Approx(a.liu_wang));
    CHECK(b.prelic_recovery == doctest::Approx(a.prelic_recovery));
    CHECK(b.prelic_relevance == doctest::Approx(a.prelic_relevance));
    CHECK(b.csi == doctest::Approx(a.csi));
    CHECK(b.clustering_error_similarity == doctest::Approx(a.clustering_error_similarity));
    CHECK(b.fabia_consensus == doctest::Approx(a.fabia_consensus));
  }
}

TEST_CASE("shape mismatch is rejected") {
  CHECK_THROWS_AS(EvaluateBiclusters(BiclusterSet({}, {3, 3}), BiclusterSet({}, {3, 4})),
                  InvalidArgument);
}

TEST_CASE("sparse precision recall f1") {
  SpikeMask truth = SpikeMask::Constant(20, 10, false);
  for (int k = 0; k < 150; ++k) truth(k / 10, k % 10) = true;
  CHECK(SparsePrf(truth, truth).f1 == 1.0);
  CHECK(SparsePrf(truth, truth).precision == 1.0);

  const SparsePRF none = SparsePrf(SpikeMask::Constant(20, 10, false), truth);
  CHECK(none.recall == 0.0);
  CHECK(none.precision == 0.0);
  CHECK(none.f1 == 0.0);

  SpikeMask pred = truth;
  for (int k = 150; k < 200; ++k) pred(k / 10, k % 10) = true;
  const SparsePRF r = SparsePrf(pred, truth);
  CHECK(r.true_positives == 150);
  CHECK(r.false_positives == 50);
  CHECK(r.false_negatives == 0);
  CHECK(r.recall == 1.0);
  CHECK(r.precision == 0.75);
  CHECK(r.f1 == doctest::Approx(6.0 / 7.0));

  CHECK_THROWS_AS(SparsePrf(pred, SpikeMask::Constant(3, 3, false)), InvalidArgument);
}

TEST_CASE("predicted spike mask thresholds magnitudes") {
  const DenseMatrix e = DenseMatrix::FromRowMajor(1, 4, {0, 1e-7, -2e-6, 3});
  const SpikeMask m = PredictedSpikeMask(e);
  CHECK_FALSE(m(0, 0));
  CHECK_FALSE(m(0, 1));
  CHECK(m(0, 2));
  CHECK(m(0, 3));
  CHECK(PredictedSpikeMask(e, 1.0).count() == 1);
}

}  // TEST_SUITE

TEST_SUITE("hungarian") {

TEST_CASE("known 3x3 optimum") {
  Eigen::Matrix3d w;
  w << 0.9, 0.1, 0.3, 0.2, 0.8, 0.7, 0.4, 0.6, 0.5;
  const Assignment a = MaxWeightAssignment(w);
  CHECK(a.total == doctest::Approx(0.9 + 0.8 + 0.5));
  std::vector<std::vector<double>> ww(3, std::vector<double>(3));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) ww[i][j] = w(i, j);
  }
  CHECK(a.total == doctest::Approx(oracle::BestAssignmentExhaustive(ww)));
}

TEST_CASE("matches exhaustive search for sizes up to 6") {
  Rng rng(77);
  for (int t = 0; t < 200; ++t) {
    const std::size_t rows = 1 + rng.UniformIndex(6), cols = 1 + rng.UniformIndex(6);
    Eigen::MatrixXd w(rows, cols);
    std::vector<std::vector<double>> ww(rows, std::vector<double>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) {
        w(i, j) = ww[i][j] = std::floor(rng.Uniform01() * 10.0) / 10.0;
      }
    }
    const Assignment a = MaxWeightAssignment(w);
    CHECK(a.total == doctest::Approx(oracle::BestAssignmentExhaustive(ww)).epsilon(1e-12));
    // The reported matching is one-to-one and sums to the total.
    std::vector<bool> used(cols, false);
    double sum = 0;
    std::size_t matched = 0;
    for (std::size_t i = 0; i < rows; ++i) {
      if (!a.row_to_col[i]) continue;
      const std::size_t j = *a.row_to_col[i];
      CHECK_FALSE(used[j]);
      used[j] = true;
      sum += w(i, j);
      ++matched;
    }
    CHECK(matched == std::min(rows, cols));
    CHECK(sum == doctest::Approx(a.total));
  }
}

TEST_CASE("min cost on a rectangular matrix") {
  Eigen::MatrixXd c(2, 3);
  c << 4, 1, 3, 2, 0, 5;
  const Assignment a = MinCostAssignment(c);
  CHECK(a.total == doctest::Approx(3.0));  // (0,1) + (1,0)
  CHECK(*a.row_to_col[0] == 1);
  CHECK(*a.row_to_col[1] == 0);
}

}  // TEST_SUITE
