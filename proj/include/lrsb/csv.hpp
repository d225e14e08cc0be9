#pragma once

#include <iosfwd>
#include <string>

#include "lrsb/matrix.hpp"

namespace lrsb {

/// Label layout of a matrix CSV. Never guessed from content.
struct CsvLayout {
  bool header_row = false;    // first line holds column labels
  bool label_column = false;  // first field of each data line is a row label
};

DenseMatrix ReadMatrixCsv(std::istream& in, const CsvLayout& layout = {});
DenseMatrix ReadMatrixCsv(const std::string& path, const CsvLayout& layout = {});

/// Writes values with 17 significant digits so a read-back is bit-exact.
/// Labels are emitted when the matrix carries them.
void WriteMatrixCsv(std::ostream& out, const DenseMatrix& m);
void WriteMatrixCsv(const std::string& path, const DenseMatrix& m);

}  // namespace lrsb
