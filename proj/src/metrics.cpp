#include "lrsb/metrics.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <optional>
#include <vector>

#include "lrsb/hungarian.hpp"

namespace lrsb {
namespace {

std::size_t IntersectCount(const std::vector<std::size_t>& a,
                           const std::vector<std::size_t>& b) {
  std::size_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

double SetJaccard(const std::vector<std::size_t>& a,
                  const std::vector<std::size_t>& b) {
  const std::size_t inter = IntersectCount(a, b);
  const std::size_t uni = a.size() + b.size() - inter;
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

std::size_t CellIntersection(const Bicluster& a, const Bicluster& b) {
  return IntersectCount(a.rows, b.rows) * IntersectCount(a.cols, b.cols);
}

// Returns a score for the empty cases, or nullopt when both sides are populated.
std::optional<double> EmptyConvention(const BiclusterSet& p,
                                      const BiclusterSet& r) {
  if (p.empty() && r.empty()) return 1.0;
  if (p.empty() || r.empty()) return 0.0;
  return std::nullopt;
}

void RequireSameShape(const BiclusterSet& p, const BiclusterSet& r) {
  if (!(p.source_shape == r.source_shape)) {
    throw InvalidArgument("bicluster sets refer to different matrix shapes");
  }
}

double RowMatchScore(const BiclusterSet& a, const BiclusterSet& b) {
  if (a.empty() || b.empty()) return 0.0;
  double total = 0.0;
  for (const Bicluster& x : a.biclusters) {
    double best = 0.0;
    for (const Bicluster& y : b.biclusters) {
      best = std::max(best, SetJaccard(x.rows, y.rows));
    }
    total += best;
  }
  return total / static_cast<double>(a.size());
}

// Per covered cell, the sorted list of bicluster indices containing it.
std::map<std::size_t, std::vector<std::size_t>> Membership(
    const BiclusterSet& s) {
  std::map<std::size_t, std::vector<std::size_t>> out;
  const std::size_t m = s.source_shape.cols;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const Bicluster& b = s.biclusters[k];
    for (std::size_t i : b.rows) {
      for (std::size_t j : b.cols) out[i * m + j].push_back(k);
    }
  }
  return out;
}

}  // namespace

double Jaccard(const Bicluster& a, const Bicluster& b) {
  const std::size_t inter = CellIntersection(a, b);
  const std::size_t uni = a.CellCount() + b.CellCount() - inter;
  return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

double LiuWangMatch(const BiclusterSet& predicted, const BiclusterSet& reference) {
  if (auto e = EmptyConvention(predicted, reference)) return *e;
  double total = 0.0;
  for (const Bicluster& r : reference.biclusters) {
    double best = 0.0;
    for (const Bicluster& p : predicted.biclusters) {
      const std::size_t ri = IntersectCount(p.rows, r.rows);
      const std::size_t ci = IntersectCount(p.cols, r.cols);
      const std::size_t ru = p.rows.size() + r.rows.size() - ri;
      const std::size_t cu = p.cols.size() + r.cols.size() - ci;
      best = std::max(best, static_cast<double>(ri + ci) /
                                static_cast<double>(ru + cu));
    }
    total += best;
  }
  return total / static_cast<double>(reference.size());
}

PrelicScores Prelic(const BiclusterSet& predicted, const BiclusterSet& reference) {
  if (predicted.empty() && reference.empty()) return {1.0, 1.0};
  return {RowMatchScore(predicted, reference), RowMatchScore(reference, predicted)};
}

double Csi(const BiclusterSet& predicted, const BiclusterSet& reference) {
  RequireSameShape(predicted, reference);
  if (auto e = EmptyConvention(predicted, reference)) return *e;
  const auto mp = Membership(predicted);
  const auto mr = Membership(reference);

  // Cells sharing both membership lists are interchangeable; count pairs per
  // class pair instead of per cell pair.
  using Signature = std::pair<std::vector<std::size_t>, std::vector<std::size_t>>;
  std::map<Signature, double> classes;
  const std::vector<std::size_t> none;
  auto visit = [&](std::size_t cell) {
    auto ip = mp.find(cell);
    auto ir = mr.find(cell);
    classes[{ip == mp.end() ? none : ip->second,
             ir == mr.end() ? none : ir->second}] += 1.0;
  };
  for (const auto& [cell, _] : mp) visit(cell);
  for (const auto& [cell, _] : mr) {
    if (!mp.count(cell)) visit(cell);
  }

  std::vector<std::pair<Signature, double>> list(classes.begin(), classes.end());
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
  for (std::size_t g = 0; g < list.size(); ++g) {
    for (std::size_t h = g; h < list.size(); ++h) {
      const double ng = list[g].second;
      const double weight = g == h ? ng * (ng - 1.0) / 2.0 : ng * list[h].second;
      if (weight == 0.0) continue;
      const double sp = static_cast<double>(
          IntersectCount(list[g].first.first, list[h].first.first));
      const double sr = static_cast<double>(
          IntersectCount(list[g].first.second, list[h].first.second));
      const double lo = std::min(sp, sr);
      a += weight * lo;
      b += weight * (sp - lo);
      c += weight * (sr - lo);
      if (sp == 0.0 && sr == 0.0) d += weight;
    }
  }
  const double total = a + b + c + d;
  return total == 0.0 ? 1.0 : (a + d) / total;
}

double ClusteringErrorSimilarity(const BiclusterSet& predicted,
                                 const BiclusterSet& reference) {
  RequireSameShape(predicted, reference);
  if (auto e = EmptyConvention(predicted, reference)) return *e;

  Eigen::MatrixXd inter(static_cast<Eigen::Index>(predicted.size()),
                        static_cast<Eigen::Index>(reference.size()));
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    for (std::size_t j = 0; j < reference.size(); ++j) {
      inter(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          static_cast<double>(
              CellIntersection(predicted.biclusters[i], reference.biclusters[j]));
    }
  }
  const double dmax = MaxWeightAssignment(inter).total;

  const auto mp = Membership(predicted);
  const auto mr = Membership(reference);
  double uni = 0.0;
  for (const auto& [cell, ks] : mp) {
    auto it = mr.find(cell);
    const std::size_t other = it == mr.end() ? 0 : it->second.size();
    uni += static_cast<double>(std::max(ks.size(), other));
  }
  for (const auto& [cell, ks] : mr) {
    if (!mp.count(cell)) uni += static_cast<double>(ks.size());
  }
  return dmax / uni;
}

double FabiaConsensus(const BiclusterSet& predicted, const BiclusterSet& reference) {
  RequireSameShape(predicted, reference);
  if (auto e = EmptyConvention(predicted, reference)) return *e;
  Eigen::MatrixXd sim(static_cast<Eigen::Index>(predicted.size()),
                      static_cast<Eigen::Index>(reference.size()));
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    for (std::size_t j = 0; j < reference.size(); ++j) {
      sim(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          Jaccard(predicted.biclusters[i], reference.biclusters[j]);
    }
  }
  const double matched = MaxWeightAssignment(sim).total;
  return matched / static_cast<double>(std::max(predicted.size(), reference.size()));
}

MetricReport EvaluateBiclusters(const BiclusterSet& predicted,
                                const BiclusterSet& reference) {
  RequireSameShape(predicted, reference);
  MetricReport r;
  r.liu_wang = LiuWangMatch(predicted, reference);
  const PrelicScores prelic = Prelic(predicted, reference);
  r.prelic_relevance = prelic.relevance;
  r.prelic_recovery = prelic.recovery;
  r.csi = Csi(predicted, reference);
  r.clustering_error_similarity = ClusteringErrorSimilarity(predicted, reference);
  r.fabia_consensus = FabiaConsensus(predicted, reference);
  return r;
}

SpikeMask PredictedSpikeMask(const DenseMatrix& sparse, double threshold) {
  return (sparse.values().array().abs() > threshold).matrix();
}

SparsePRF SparsePrf(const SpikeMask& predicted, const SpikeMask& truth) {
  if (predicted.rows() != truth.rows() || predicted.cols() != truth.cols()) {
    throw InvalidArgument("SparsePrf: mask shapes differ");
  }
  SparsePRF out;
  for (Eigen::Index i = 0; i < truth.rows(); ++i) {
    for (Eigen::Index j = 0; j < truth.cols(); ++j) {
      const bool p = predicted(i, j);
      const bool t = truth(i, j);
      if (p && t) ++out.true_positives;
      if (p && !t) ++out.false_positives;
      if (!p && t) ++out.false_negatives;
    }
  }
  const double tp = static_cast<double>(out.true_positives);
  const std::size_t pp = out.true_positives + out.false_positives;
  const std::size_t ap = out.true_positives + out.false_negatives;
  out.precision = pp == 0 ? 0.0 : tp / static_cast<double>(pp);
  out.recall = ap == 0 ? 0.0 : tp / static_cast<double>(ap);
  const double s = out.precision + out.recall;
  out.f1 = s > 0.0 ? 2.0 * out.precision * out.recall / s : 0.0;
  return out;
}

}  // namespace lrsb
