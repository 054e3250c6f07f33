#pragma once

#include <fstream>
#include <string>
#include <utility>
#include <vector>

namespace rotamp::cli {

// A column name and its one-line meaning, emitted in the '#' schema line.
struct Column {
  std::string name;
  std::string doc;
};

// Writes "# schema: name=doc; ..." then the header, unless appending to a
// file that already has them. Numbers are printed with 17 significant digits.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::vector<Column> columns, bool append = false);

  void row(const std::vector<double>& values);
  void row(const std::vector<std::string>& cells);
  void flush() { out_.flush(); }

 private:
  std::vector<Column> columns_;
  std::ofstream out_;
};

std::string format_number(double v);

// Data rows of a file written by CsvWriter (schema and header skipped).
// Cells that are not numbers read as NaN in `rows`.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> cells;
  std::vector<std::vector<double>> rows;
};
CsvTable read_csv(const std::string& path);

}  // namespace rotamp::cli
