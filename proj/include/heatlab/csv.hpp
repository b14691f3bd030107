#pragma once

#include <string>
#include <vector>

namespace heatlab {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Column by header name; throws InvalidInput if absent.
  std::vector<double> column(const std::string& name) const;
};

/// Reads a numeric CSV with a single header line. Throws FileError.
CsvTable read_csv(const std::string& path);

/// Writes columns under the given header; all columns must be equally long.
/// Values are printed with round-trip precision so reruns are byte-identical.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

std::string format_number(double v);

}  // namespace heatlab
