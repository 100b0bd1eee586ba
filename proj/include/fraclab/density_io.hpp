#pragma once

#include <iosfwd>

#include "fraclab/csv.hpp"
#include "fraclab/ffp_solver.hpp"

namespace fraclab {

/// Columns x1..xD, P; metadata carries the parameters and grid.
CsvTable density_table(const DensityField& field);
DensityField density_from_table(const CsvTable& table);

void write_density_csv(std::ostream& os, const DensityField& field);
DensityField read_density_csv(std::istream& is);

/// One line of JSON header, a newline, then the values as little-endian
/// float64 in grid order.
void write_density_binary(std::ostream& os, const DensityField& field);
DensityField read_density_binary(std::istream& is);

}  // namespace fraclab
