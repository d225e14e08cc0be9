#include "lrsb/bicluster.hpp"

#include <algorithm>
#include <sstream>

#include "lrsb/matrix.hpp"

namespace lrsb {
namespace {

void Normalize(std::vector<std::size_t>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

Bicluster::Bicluster(std::vector<std::size_t> r, std::vector<std::size_t> c,
                     std::optional<double> p)
    : rows(std::move(r)), cols(std::move(c)), p_value(p) {
  Normalize(rows);
  Normalize(cols);
}

bool Bicluster::ContainsCell(std::size_t i, std::size_t j) const {
  return std::binary_search(rows.begin(), rows.end(), i) &&
         std::binary_search(cols.begin(), cols.end(), j);
}

BiclusterSet::BiclusterSet(std::vector<Bicluster> b, Shape shape)
    : biclusters(std::move(b)), source_shape(shape) {}

void BiclusterSet::Validate() const {
  for (std::size_t k = 0; k < biclusters.size(); ++k) {
    const Bicluster& b = biclusters[k];
    std::ostringstream where;
    where << "bicluster " << k << ": ";
    if (b.rows.empty() || b.cols.empty()) {
      throw InvalidArgument(where.str() + "empty row or column set");
    }
    if (b.rows.back() >= source_shape.rows ||
        b.cols.back() >= source_shape.cols) {
      throw InvalidArgument(where.str() + "index outside " +
                            std::to_string(source_shape.rows) + "x" +
                            std::to_string(source_shape.cols));
    }
    if (b.p_value && !(*b.p_value >= 0.0 && *b.p_value <= 1.0)) {
      throw InvalidArgument(where.str() + "p-value outside [0, 1]");
    }
  }
}

}  // namespace lrsb
