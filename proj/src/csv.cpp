#include "shocklab/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace shocklab {

CsvWriter::CsvWriter(std::vector<std::string> columns)
    : columns_(std::move(columns)) {
  if (columns_.empty()) throw std::logic_error("csv needs at least one column");
}

void CsvWriter::add_row(const std::vector<double>& row) {
  if (row.size() != columns_.size())
    throw std::logic_error("csv row width does not match the header");
  std::string line;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) line += ',';
    line += format(row[i]);
  }
  lines_.push_back(std::move(line));
}

void CsvWriter::add_text_row(const std::vector<std::string>& row) {
  if (row.size() != columns_.size())
    throw std::logic_error("csv row width does not match the header");
  std::string line;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) line += ',';
    line += row[i];
  }
  lines_.push_back(std::move(line));
}

void CsvWriter::add_comment(const std::string& text) {
  lines_.push_back("# " + text);
}

std::string CsvWriter::str() const {
  std::string header;
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) header += ',';
    header += columns_[i];
  }
  header += '\n';
  // The column header goes directly above the first data row, so leading
  // comments (manifest stamp) stay at the top of the file.
  std::string out;
  bool header_done = false;
  for (const std::string& line : lines_) {
    if (!header_done && (line.empty() || line[0] != '#')) {
      out += header;
      header_done = true;
    }
    out += line;
    out += '\n';
  }
  if (!header_done) out += header;
  return out;
}

void CsvWriter::write(const std::string& path) const {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
    f << str();
    if (!f.good()) throw std::runtime_error("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot move " + tmp + " into place");
}

std::string CsvWriter::format(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace shocklab
