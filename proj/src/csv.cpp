#include "fraclab/csv.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "fraclab/errors.hpp"

namespace fraclab {

std::string format_double(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, r.ptr};
}

const std::string* CsvTable::find_meta(const std::string& key) const {
  for (const auto& [k, v] : meta)
    if (k == key) return &v;
  return nullptr;
}

double CsvTable::meta_number(const std::string& key) const {
  const std::string* v = find_meta(key);
  if (!v) throw InputError("missing metadata field '" + key + "'");
  try {
    return std::stod(*v);
  } catch (const std::exception&) {
    throw InputError("metadata field '" + key + "' is not a number: " + *v);
  }
}

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  throw InputError("missing column '" + name + "'");
}

void write_csv(std::ostream& os, const CsvTable& table) {
  for (const auto& [k, v] : table.meta) os << "# " << k << '=' << v << '\n';
  for (std::size_t i = 0; i < table.header.size(); ++i)
    os << (i ? "," : "") << table.header[i];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
    os << '\n';
  }
}

CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::size_t start = line.find_first_not_of(' ', 1);
      if (start == std::string::npos) continue;
      const std::size_t eq = line.find('=', start);
      if (eq == std::string::npos) continue;
      t.meta.emplace_back(line.substr(start, eq - start), line.substr(eq + 1));
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (t.header.empty()) {
      t.header = std::move(cells);
      continue;
    }
    if (cells.size() != t.header.size())
      throw InputError("line " + std::to_string(lineno) + ": expected " +
                       std::to_string(t.header.size()) + " columns");
    std::vector<double> row(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      try {
        std::size_t used = 0;
        row[i] = std::stod(cells[i], &used);
        if (used != cells[i].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw InputError("line " + std::to_string(lineno) + ": bad number '" + cells[i] + "'");
      }
    }
    t.rows.push_back(std::move(row));
  }
  if (t.header.empty()) throw InputError("CSV has no header line");
  return t;
}

}  // namespace fraclab
