#include "lrsb/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace lrsb {
namespace {

std::vector<std::string> SplitFields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double ParseNumber(const std::string& raw, std::size_t line_no,
                   std::size_t field_no) {
  const std::string s = Trim(raw);
  double v = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (!s.empty() && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (s.empty() || ec != std::errc() || ptr != end) {
    std::ostringstream msg;
    msg << "line " << line_no << ", field " << field_no
        << ": not a number: '" << s << "'";
    throw InvalidArgument(msg.str());
  }
  return v;
}

std::string FormatNumber(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

DenseMatrix ReadMatrixCsv(std::istream& in, const CsvLayout& layout) {
  std::vector<std::string> col_labels;
  std::vector<std::string> row_labels;
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  bool have_cols = false;

  std::string line;
  std::size_t line_no = 0;
  bool header_pending = layout.header_row;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    auto fields = SplitFields(line);
    if (header_pending) {
      header_pending = false;
      std::size_t start = layout.label_column ? 1 : 0;
      for (std::size_t k = start; k < fields.size(); ++k) {
        col_labels.push_back(Trim(fields[k]));
      }
      continue;
    }
    std::size_t start = 0;
    if (layout.label_column) {
      if (fields.empty()) {
        throw InvalidArgument("line " + std::to_string(line_no) +
                              ": missing row label");
      }
      row_labels.push_back(Trim(fields[0]));
      start = 1;
    }
    const std::size_t n_fields = fields.size() - start;
    if (!have_cols) {
      cols = n_fields;
      have_cols = true;
    } else if (n_fields != cols) {
      std::ostringstream msg;
      msg << "line " << line_no << ": expected " << cols << " values, got "
          << n_fields;
      throw InvalidArgument(msg.str());
    }
    for (std::size_t k = start; k < fields.size(); ++k) {
      values.push_back(ParseNumber(fields[k], line_no, k + 1));
    }
    ++rows;
  }
  if (!col_labels.empty() && have_cols && col_labels.size() != cols) {
    throw InvalidArgument("header has " + std::to_string(col_labels.size()) +
                          " labels but rows have " + std::to_string(cols) +
                          " values");
  }
  if (!have_cols) cols = col_labels.size();

  DenseMatrix plain = DenseMatrix::FromRowMajor(rows, cols, values);
  if (col_labels.empty() && row_labels.empty()) return plain;
  return DenseMatrix(plain.values(), std::move(row_labels),
                     std::move(col_labels));
}

DenseMatrix ReadMatrixCsv(const std::string& path, const CsvLayout& layout) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open matrix file: " + path);
  return ReadMatrixCsv(in, layout);
}

void WriteMatrixCsv(std::ostream& out, const DenseMatrix& m) {
  if (m.has_col_labels()) {
    if (m.has_row_labels()) out << ',';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << m.col_labels()[j];
    }
    out << '\n';
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (m.has_row_labels()) out << m.row_labels()[i] << ',';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << FormatNumber(m(i, j));
    }
    out << '\n';
  }
}

void WriteMatrixCsv(const std::string& path, const DenseMatrix& m) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write matrix file: " + path);
  WriteMatrixCsv(out, m);
}

}  // namespace lrsb
