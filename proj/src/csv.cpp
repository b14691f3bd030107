#include "heatlab/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "heatlab/error.hpp"

namespace heatlab {

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    cell.erase(0, cell.find_first_not_of(" \t\r"));
    cell.erase(cell.find_last_not_of(" \t\r") + 1);
    out.push_back(cell);
  }
  return out;
}

}  // namespace

std::vector<double> CsvTable::column(const std::string& name) const {
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j] != name) continue;
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(row[j]);
    return out;
  }
  throw InvalidInput("CSV has no column '" + name + "'");
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError(path, "cannot open file");
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw FileError(path, "empty file");
  table.header = split(line);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split(line);
    if (cells.size() != table.header.size()) {
      throw FileError(path, "line " + std::to_string(line_no) + ": expected " +
                                std::to_string(table.header.size()) + " fields");
    }
    std::vector<double> row;
    for (const auto& c : cells) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(c, &used));
        if (used != c.size()) throw std::invalid_argument(c);
      } catch (const std::exception&) {
        throw FileError(path, "line " + std::to_string(line_no) + ": bad number '" + c + "'");
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string format_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
  if (header.size() != columns.size()) throw InvalidInput("CSV header/column count mismatch");
  const std::size_t n = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != n) throw InvalidInput("CSV columns differ in length");
  }
  std::ofstream out(path);
  if (!out) throw FileError(path, "cannot write file");
  for (std::size_t j = 0; j < header.size(); ++j) out << (j ? "," : "") << header[j];
  out << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      out << (j ? "," : "") << format_number(columns[j][i]);
    }
    out << '\n';
  }
  if (!out) throw FileError(path, "write failed");
}

}  // namespace heatlab
