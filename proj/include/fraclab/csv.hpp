#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace fraclab {

/// Shortest text that reads back to the same double.
std::string format_double(double v);

/// CSV with '#'-prefixed "key=value" metadata lines, one header line, and
/// numeric rows.
struct CsvTable {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  const std::string* find_meta(const std::string& key) const;
  double meta_number(const std::string& key) const;  // throws InputError if absent
  int column(const std::string& name) const;          // throws InputError if absent
};

void write_csv(std::ostream& os, const CsvTable& table);
CsvTable read_csv(std::istream& is);

}  // namespace fraclab
