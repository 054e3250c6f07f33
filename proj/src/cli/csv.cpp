#include "rotamp/cli/csv.hpp"

#include <cstdlib>
#include <filesystem>
#include <limits>
#include <sstream>

#include <fmt/format.h>

#include "rotamp/error.hpp"

namespace rotamp::cli {

std::string format_number(double v) { return fmt::format("{:.17g}", v); }

CsvWriter::CsvWriter(const std::string& path, std::vector<Column> columns, bool append)
    : columns_(std::move(columns)) {
  const bool fresh = !append || !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  out_.open(path, fresh ? std::ios::trunc : std::ios::app);
  if (!out_) throw std::runtime_error("cannot write '" + path + "'");
  if (!fresh) return;
  out_ << "# schema:";
  for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "; " : " ") << columns_[i].name << "=" << columns_[i].doc;
  out_ << "\n";
  for (std::size_t i = 0; i < columns_.size(); ++i) out_ << (i ? "," : "") << columns_[i].name;
  out_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_.size()) throw std::logic_error("csv row has the wrong number of fields");
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_number(values[i]);
  out_ << "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size()) throw std::logic_error("csv row has the wrong number of fields");
  for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
  out_ << "\n";
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  CsvTable t;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (t.header.empty()) {
      t.header = cells;
      continue;
    }
    if (cells.size() != t.header.size()) throw std::runtime_error("'" + path + "': ragged row");
    std::vector<double> r;
    for (const auto& c : cells) {
      char* end = nullptr;
      const double v = std::strtod(c.c_str(), &end);
      r.push_back(!c.empty() && *end == '\0' ? v : std::numeric_limits<double>::quiet_NaN());
    }
    t.rows.push_back(std::move(r));
    t.cells.push_back(std::move(cells));
  }
  return t;
}

}  // namespace rotamp::cli
