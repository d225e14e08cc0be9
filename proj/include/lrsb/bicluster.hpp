#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace lrsb {

/// Row and column index sets (kept sorted and unique) with an optional
/// significance p-value.
struct Bicluster {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  std::optional<double> p_value;

  Bicluster() = default;
  Bicluster(std::vector<std::size_t> r, std::vector<std::size_t> c,
            std::optional<double> p = std::nullopt);

  std::size_t CellCount() const { return rows.size() * cols.size(); }
  bool ContainsCell(std::size_t i, std::size_t j) const;

  friend bool operator==(const Bicluster& a, const Bicluster& b) {
    return a.rows == b.rows && a.cols == b.cols;
  }
};

struct Shape {
  std::size_t rows = 0;
  std::size_t cols = 0;
  friend bool operator==(const Shape&, const Shape&) = default;
};

struct BiclusterSet {
  std::vector<Bicluster> biclusters;
  Shape source_shape;

  BiclusterSet() = default;
  BiclusterSet(std::vector<Bicluster> b, Shape shape);

  std::size_t size() const { return biclusters.size(); }
  bool empty() const { return biclusters.empty(); }

  /// Throws InvalidArgument on empty index sets, out-of-range indices, or a
  /// p-value outside [0, 1].
  void Validate() const;
};

}  // namespace lrsb
