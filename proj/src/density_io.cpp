#include "fraclab/density_io.hpp"

#include <bit>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "fraclab/errors.hpp"

namespace fraclab {

static_assert(std::endian::native == std::endian::little, "binary format assumes little endian");

CsvTable density_table(const DensityField& f) {
  CsvTable t;
  t.meta = {{"kind", "density"},
            {"lambda", format_double(f.params.lam)},
            {"gamma", format_double(f.params.gamma)},
            {"dlam", format_double(f.params.d_lam)},
            {"dim", std::to_string(f.params.dim)},
            {"time", format_double(f.t)},
            {"grid_extent", format_double(f.grid.extent)},
            {"grid_points", std::to_string(f.grid.points)},
            {"tail_mass", format_double(f.tail_mass)}};
  for (int a = 0; a < f.grid.dim; ++a) t.header.push_back("x" + std::to_string(a + 1));
  t.header.push_back("P");
  const int n = f.grid.points;
  t.rows.reserve(f.values.size());
  std::vector<int> idx(f.grid.dim, 0);
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    std::size_t rest = i;
    for (int a = f.grid.dim - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(rest % n);
      rest /= n;
    }
    std::vector<double> row;
    row.reserve(f.grid.dim + 1);
    for (int a = 0; a < f.grid.dim; ++a) row.push_back(f.grid.coordinate(idx[a]));
    row.push_back(f.values[i]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

DensityField density_from_table(const CsvTable& t) {
  DensityField f;
  f.params.lam = t.meta_number("lambda");
  f.params.gamma = t.meta_number("gamma");
  f.params.d_lam = t.meta_number("dlam");
  f.params.dim = static_cast<int>(t.meta_number("dim"));
  f.t = t.meta_number("time");
  f.grid = GridSpec{t.meta_number("grid_extent"), static_cast<int>(t.meta_number("grid_points")),
                    f.params.dim};
  if (const auto* tm = t.find_meta("tail_mass")) f.tail_mass = std::stod(*tm);
  f.grid.validate();
  const int pcol = t.column("P");
  if (t.rows.size() != f.grid.size())
    throw InputError("density CSV has " + std::to_string(t.rows.size()) + " rows, grid needs " +
                     std::to_string(f.grid.size()));
  f.values.reserve(t.rows.size());
  for (const auto& row : t.rows) f.values.push_back(row[pcol]);
  return f;
}

void write_density_csv(std::ostream& os, const DensityField& field) {
  write_csv(os, density_table(field));
}

DensityField read_density_csv(std::istream& is) { return density_from_table(read_csv(is)); }

void write_density_binary(std::ostream& os, const DensityField& f) {
  nlohmann::json h = {{"format", "fraclab-density"},
                      {"dtype", "float64-le"},
                      {"count", f.values.size()},
                      {"lambda", f.params.lam},
                      {"gamma", f.params.gamma},
                      {"dlam", f.params.d_lam},
                      {"dim", f.params.dim},
                      {"time", f.t},
                      {"grid_extent", f.grid.extent},
                      {"grid_points", f.grid.points},
                      {"tail_mass", f.tail_mass}};
  os << h.dump() << '\n';
  os.write(reinterpret_cast<const char*>(f.values.data()),
           static_cast<std::streamsize>(f.values.size() * sizeof(double)));
}

DensityField read_density_binary(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InputError("missing binary density header");
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad binary density header: ") + e.what());
  }
  if (h.value("format", "") != "fraclab-density" || h.value("dtype", "") != "float64-le")
    throw InputError("not a fraclab float64 density file");
  DensityField f;
  try {
    f.params.lam = h.at("lambda");
    f.params.gamma = h.at("gamma");
    f.params.d_lam = h.at("dlam");
    f.params.dim = h.at("dim");
    f.t = h.at("time");
    f.grid = GridSpec{h.at("grid_extent"), h.at("grid_points"), f.params.dim};
    f.tail_mass = h.value("tail_mass", 0.0);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad binary density header: ") + e.what());
  }
  f.grid.validate();
  const std::size_t count = h.at("count");
  if (count != f.grid.size()) throw InputError("binary density count does not match grid");
  f.values.resize(count);
  is.read(reinterpret_cast<char*>(f.values.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  if (static_cast<std::size_t>(is.gcount()) != count * sizeof(double))
    throw InputError("binary density payload is truncated");
  return f;
}

}  // namespace fraclab
