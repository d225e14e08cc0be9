#pragma once

#include <string>

#include "json.hpp"

#include "lrsb/bicluster.hpp"
#include "lrsb/metrics.hpp"
#include "lrsb/significance.hpp"
#include "lrsb/synthgen.hpp"

namespace lrsb {

using Json = nlohmann::ordered_json;

/// Rounds to 12 significant digits so emitted JSON is stable and readable.
double Round12(double v);

/// {shape:[n,m], biclusters:[{rows, cols, p_value: null|number}]}
Json ToJson(const BiclusterSet& set);
BiclusterSet BiclusterSetFromJson(const Json& j);

/// {shape:[n,m], biclusters:[{rows, cols}], spikes:[[i,j], ...]}
Json ToJson(const GroundTruth& truth, Shape shape);
/// `shape` is used when the document carries none.
GroundTruth GroundTruthFromJson(const Json& j, Shape shape);
Shape GroundTruthShape(const Json& j);

/// {alpha, n_tested, threshold, degenerate_null, results:[{rows, cols, p_value, pass}]}
Json ToJson(const SignificanceReport& report);

Json ToJson(const MetricReport& report);
Json ToJson(const SparsePRF& prf);

Json ReadJsonFile(const std::string& path);
/// Pretty-printed (2-space indent) with a trailing newline.
void WriteJsonFile(const std::string& path, const Json& j);

}  // namespace lrsb
