#pragma once

#include <cstddef>

#include "lrsb/matrix.hpp"

namespace lrsb {

/// 100 - score. Every score must lie in [0, 100]; otherwise InvalidArgument
/// lists the offending positions.
DenseMatrix InvertPercent(const DenseMatrix& scores);

/// 1 - mastery. Every value must lie in [0, 1].
DenseMatrix InvertUnit(const DenseMatrix& mastery);

/// Equal-width binning of [lo, hi] into `levels` integer levels 0..levels-1
/// (hi itself lands in the top level). Values outside [lo, hi] are rejected.
DenseMatrix BinLevels(const DenseMatrix& m, std::size_t levels = 10,
                      double lo = 0.0, double hi = 100.0);

}  // namespace lrsb
