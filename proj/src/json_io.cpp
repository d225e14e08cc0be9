#include "lrsb/json_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace lrsb {
namespace {

Json IndexArray(const std::vector<std::size_t>& v) {
  Json a = Json::array();
  for (std::size_t x : v) a.push_back(x);
  return a;
}

Shape ReadShape(const Json& j) {
  const auto& s = j.at("shape");
  if (!s.is_array() || s.size() != 2) {
    throw InvalidArgument("'shape' must be a two-element array");
  }
  return {s[0].get<std::size_t>(), s[1].get<std::size_t>()};
}

Bicluster ReadBicluster(const Json& j) {
  Bicluster b(j.at("rows").get<std::vector<std::size_t>>(),
              j.at("cols").get<std::vector<std::size_t>>());
  if (j.contains("p_value") && !j["p_value"].is_null()) {
    b.p_value = j["p_value"].get<double>();
  }
  return b;
}

}  // namespace

double Round12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::strtod(buf, nullptr);
}

Json ToJson(const BiclusterSet& set) {
  Json j;
  j["shape"] = {set.source_shape.rows, set.source_shape.cols};
  j["biclusters"] = Json::array();
  for (const Bicluster& b : set.biclusters) {
    Json e;
    e["rows"] = IndexArray(b.rows);
    e["cols"] = IndexArray(b.cols);
    e["p_value"] = b.p_value ? Json(Round12(*b.p_value)) : Json(nullptr);
    j["biclusters"].push_back(std::move(e));
  }
  return j;
}

BiclusterSet BiclusterSetFromJson(const Json& j) {
  BiclusterSet set({}, ReadShape(j));
  for (const Json& e : j.at("biclusters")) set.biclusters.push_back(ReadBicluster(e));
  set.Validate();
  return set;
}

Json ToJson(const GroundTruth& truth, Shape shape) {
  Json j;
  j["shape"] = {shape.rows, shape.cols};
  j["biclusters"] = Json::array();
  for (const Bicluster& b : truth.biclusters) {
    Json e;
    e["rows"] = IndexArray(b.rows);
    e["cols"] = IndexArray(b.cols);
    j["biclusters"].push_back(std::move(e));
  }
  j["spikes"] = Json::array();
  for (const auto& [i, k] : truth.SpikePositions()) j["spikes"].push_back({i, k});
  return j;
}

Shape GroundTruthShape(const Json& j) { return ReadShape(j); }

GroundTruth GroundTruthFromJson(const Json& j, Shape shape) {
  if (j.contains("shape")) shape = ReadShape(j);
  GroundTruth truth;
  for (const Json& e : j.at("biclusters")) truth.biclusters.push_back(ReadBicluster(e));
  truth.spike_mask = SpikeMask::Constant(static_cast<Eigen::Index>(shape.rows),
                                         static_cast<Eigen::Index>(shape.cols),
                                         false);
  if (j.contains("spikes")) {
    for (const Json& s : j["spikes"]) {
      const auto i = s.at(0).get<std::size_t>();
      const auto k = s.at(1).get<std::size_t>();
      if (i >= shape.rows || k >= shape.cols) {
        throw InvalidArgument("spike position outside the matrix");
      }
      truth.spike_mask(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          true;
    }
  }
  BiclusterSet(truth.biclusters, shape).Validate();
  return truth;
}

Json ToJson(const SignificanceReport& report) {
  Json j;
  j["alpha"] = Round12(report.global_alpha);
  j["n_tested"] = report.n_tested;
  if (report.n_tested > 0) {
    j["threshold"] =
        Round12(report.global_alpha / static_cast<double>(report.n_tested));
  } else {
    j["threshold"] = nullptr;
  }
  j["degenerate_null"] = report.degenerate_null;
  j["results"] = Json::array();
  for (const SignificanceEntry& e : report.results) {
    Json r;
    r["rows"] = IndexArray(e.bicluster.rows);
    r["cols"] = IndexArray(e.bicluster.cols);
    r["p_value"] = Round12(e.p_value);
    r["pass"] = e.pass;
    j["results"].push_back(std::move(r));
  }
  return j;
}

Json ToJson(const MetricReport& r) {
  Json j;
  j["liu_wang"] = Round12(r.liu_wang);
  j["prelic_recovery"] = Round12(r.prelic_recovery);
  j["prelic_relevance"] = Round12(r.prelic_relevance);
  j["csi"] = Round12(r.csi);
  j["clustering_error_similarity"] = Round12(r.clustering_error_similarity);
  j["fabia_consensus"] = Round12(r.fabia_consensus);
  return j;
}

Json ToJson(const SparsePRF& prf) {
  Json j;
  j["precision"] = Round12(prf.precision);
  j["recall"] = Round12(prf.recall);
  j["f1"] = Round12(prf.f1);
  j["true_positives"] = prf.true_positives;
  j["false_positives"] = prf.false_positives;
  j["false_negatives"] = prf.false_negatives;
  return j;
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open JSON file: " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

void WriteJsonFile(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write JSON file: " + path);
  out << j.dump(2) << '\n';
}

}  // namespace lrsb
