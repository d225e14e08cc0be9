#include "lrsb/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lrsb {
namespace {

void RequireRange(const DenseMatrix& m, double lo, double hi, const char* what) {
  std::ostringstream bad;
  std::size_t count = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      if (v < lo || v > hi) {
        if (count < 20) bad << " (" << i << ", " << j << ")=" << v;
        ++count;
      }
    }
  }
  if (count == 0) return;
  std::ostringstream msg;
  msg << what << ": " << count << " value(s) outside [" << lo << ", " << hi
      << "]:" << bad.str();
  if (count > 20) msg << " ...";
  throw InvalidArgument(msg.str());
}

}  // namespace

DenseMatrix InvertPercent(const DenseMatrix& scores) {
  RequireRange(scores, 0.0, 100.0, "invert");
  return scores.WithValues((100.0 - scores.values().array()).matrix());
}

DenseMatrix InvertUnit(const DenseMatrix& mastery) {
  RequireRange(mastery, 0.0, 1.0, "invert-unit");
  return mastery.WithValues((1.0 - mastery.values().array()).matrix());
}

DenseMatrix BinLevels(const DenseMatrix& m, std::size_t levels, double lo,
                      double hi) {
  if (levels < 1) throw InvalidArgument("bin: levels must be >= 1");
  if (!(hi > lo)) throw InvalidArgument("bin: empty range");
  RequireRange(m, lo, hi, "bin");
  const double width = (hi - lo) / static_cast<double>(levels);
  const double top = static_cast<double>(levels - 1);
  return m.WithValues(m.values().unaryExpr([=](double v) {
    return std::min(std::floor((v - lo) / width), top);
  }));
}

}  // namespace lrsb
