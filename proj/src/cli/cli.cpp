#include "fraclab/cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "fraclab/cli/manifest.hpp"
#include "fraclab/csv.hpp"
#include "fraclab/density_io.hpp"
#include "fraclab/errors.hpp"
#include "fraclab/exponents.hpp"
#include "fraclab/ffp_solver.hpp"
#include "fraclab/fractional_gp.hpp"
#include "fraclab/levy_walks.hpp"
#include "fraclab/stats.hpp"

#ifndef FRACLAB_VERSION
#define FRACLAB_VERSION "0.0.0"
#endif

namespace fraclab::cli {
namespace {

using ojson = nlohmann::ordered_json;

std::ofstream open_out(const std::string& path, bool binary = false) {
  std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
  if (!f) throw InputError("cannot write " + path);
  return f;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot read " + path);
  return f;
}

std::string manifest_path(const std::string& manifest, const std::string& out) {
  return manifest.empty() ? out + ".manifest.json" : manifest;
}

RunManifest start_manifest(const std::string& sub, const std::vector<std::string>& args) {
  RunManifest m;
  m.subcommand = sub;
  m.argv = args;
  m.version = std::string("fraclab ") + FRACLAB_VERSION;
  m.timestamp = iso8601_now();
  return m;
}

ojson params_json(const LevyParams& p) {
  return {{"lambda", p.lam}, {"gamma", p.gamma}, {"dlam", p.d_lam}, {"dim", p.dim}};
}

// Fills unset grid fields (0) from auto_grid.
GridSpec resolve_grid(const LevyParams& p, double t, int points, double extent) {
  if (points > 0 && extent > 0.0) return GridSpec{extent, points, p.dim};
  GridSpec g = auto_grid(p, t);
  if (points > 0) g.points = points;
  if (extent > 0.0) g.extent = extent;
  return g;
}

// ---------------------------------------------------------------- density

struct DensityOpts {
  LevyParams p;
  double time = 1.0;
  int grid_n = 0;
  double extent = 0.0;
  double cutoff = 1e-6;
  std::string format = "csv";
  std::string out = "density.csv";
  std::string manifest;
};

void add_levy_flags(CLI::App* c, LevyParams& p, double& time) {
  c->add_option("--lambda", p.lam, "Levy index lambda in (0, 2]")->capture_default_str();
  c->add_option("--gamma", p.gamma, "time-fractional deficit gamma in [0, 1)")->capture_default_str();
  c->add_option("--dlam", p.d_lam, "generalized diffusion constant")->capture_default_str();
  c->add_option("--dim", p.dim, "spatial dimension")->capture_default_str();
  c->add_option("--time", time, "physical time t")->capture_default_str();
}

int cmd_density(const DensityOpts& o, const std::vector<std::string>& args, std::ostream& out) {
  o.p.validate();
  if (!(o.time > 0.0)) throw ParameterError("time must be positive");
  const GridSpec g = resolve_grid(o.p, o.time, o.grid_n, o.extent);
  SolveOptions so;
  so.spectral_cutoff = o.cutoff;
  const DensityField f = solve_density(o.p, o.time, g, so);
  if (o.format == "binary") {
    auto file = open_out(o.out, true);
    write_density_binary(file, f);
  } else {
    auto file = open_out(o.out);
    write_density_csv(file, f);
  }
  RunManifest m = start_manifest("density", args);
  m.parameters = params_json(o.p);
  m.parameters["time"] = o.time;
  m.parameters["grid_extent"] = g.extent;
  m.parameters["grid_points"] = g.points;
  m.parameters["cutoff"] = o.cutoff;
  m.parameters["format"] = o.format;
  m.results = {{"mass", f.mass()}, {"min_value", f.min_value()}, {"tail_mass", f.tail_mass}};
  m.outputs = {o.out};
  m.write(manifest_path(o.manifest, o.out));
  out << "wrote " << o.out << " (" << g.points << "^" << g.dim << " points, extent " << g.extent
      << ", mass " << f.mass() << ")\n";
  return kOk;
}

// ----------------------------------------------------------------- sample

struct SampleOpts {
  LevyParams p;
  double time = 1.0;
  std::size_t walkers = 100000;
  std::uint64_t seed = 1;
  double ds = 0.0;
  std::uint64_t steps = 1;
  int grid_n = 0;
  double extent = 0.0;
  int cells_per_bin = 0;
  double window = 0.0;
  std::string out = "endpoints.csv";
  std::string hist_out;
  std::string manifest;
};

std::string default_hist_path(const std::string& out) {
  const auto dot = out.rfind('.');
  const auto slash = out.find_last_of('/');
  const std::string stem =
      (dot != std::string::npos && (slash == std::string::npos || dot > slash)) ? out.substr(0, dot) : out;
  return stem + ".hist.csv";
}

void write_endpoints(const std::string& path, const WalkEnsemble& e) {
  auto f = open_out(path);
  f << "# kind=endpoints\n# lambda=" << format_double(e.params.lam)
    << "\n# gamma=" << format_double(e.params.gamma) << "\n# dlam=" << format_double(e.params.d_lam)
    << "\n# dim=" << e.params.dim << "\n# time=" << format_double(e.t) << "\n# walkers=" << e.n_walkers
    << "\n# seed=" << e.seed;
  if (e.params.gamma == 0.0) f << "\n# steps_per_walker=" << e.n_steps;
  else f << "\n# ds=" << format_double(e.ds) << "\n# pseudotime_steps=" << e.n_steps;
  f << '\n';
  for (int a = 0; a < e.dim(); ++a) f << (a ? "," : "") << 'x' << a + 1;
  f << '\n';
  std::string line;
  for (std::size_t i = 0; i < e.n_walkers; ++i) {
    line.clear();
    for (int a = 0; a < e.dim(); ++a) {
      if (a) line += ',';
      line += format_double(e.coordinate(i, a));
    }
    line += '\n';
    f << line;
  }
}

CsvTable histogram_table(const Histogram& h, const GridSpec& g, int cells_per_bin, const LevyParams& p,
                         double t) {
  CsvTable tab;
  tab.meta = {{"kind", "histogram"},
              {"lambda", format_double(p.lam)},
              {"gamma", format_double(p.gamma)},
              {"dlam", format_double(p.d_lam)},
              {"dim", std::to_string(p.dim)},
              {"time", format_double(t)},
              {"grid_extent", format_double(g.extent)},
              {"grid_points", std::to_string(g.points)},
              {"cells_per_bin", std::to_string(cells_per_bin)},
              {"bin_lo", format_double(h.lo)},
              {"bin_width", format_double(h.width)},
              {"below", std::to_string(h.below)},
              {"above", std::to_string(h.above)},
              {"total", std::to_string(h.total())}};
  tab.header = {"lo", "hi", "count"};
  for (std::size_t b = 0; b < h.bins(); ++b)
    tab.rows.push_back({h.lo + h.width * static_cast<double>(b),
                        h.lo + h.width * static_cast<double>(b + 1), static_cast<double>(h.counts[b])});
  return tab;
}

int cmd_sample(const SampleOpts& o, const std::vector<std::string>& args, std::ostream& out) {
  o.p.validate();
  if (!(o.time > 0.0)) throw ParameterError("time must be positive");
  if (o.walkers < 1) throw ParameterError("walkers must be at least 1");
  const double ds = o.ds > 0.0 ? o.ds : 1e-3 * o.time;
  WalkEnsemble e = o.p.gamma == 0.0 ? simulate_walk(o.p, o.time, o.walkers, o.steps, o.seed)
                                    : simulate_subordinated(o.p, o.time, o.walkers, ds, o.seed);
  const GridSpec g = resolve_grid(o.p, o.time, o.grid_n, o.extent);
  g.validate();
  const double window = o.window > 0.0 ? o.window : std::min(0.9 * g.extent, 10.0 * o.p.decay_scale(o.time));
  int m = o.cells_per_bin;
  if (m <= 0) {
    m = std::max(1, static_cast<int>(std::lround(2.0 * window / 200.0 / g.spacing())));
    if (m % 2 == 0) ++m;
  }
  Histogram h = histogram_endpoints(e, grid_aligned_histogram(g, m, window));
  write_endpoints(o.out, e);
  const std::string hist_path = o.hist_out.empty() ? default_hist_path(o.out) : o.hist_out;
  {
    auto f = open_out(hist_path);
    write_csv(f, histogram_table(h, g, m, o.p, o.time));
  }
  RunManifest man = start_manifest("sample", args);
  man.parameters = params_json(o.p);
  man.parameters["time"] = o.time;
  man.parameters["walkers"] = o.walkers;
  man.parameters["steps"] = o.steps;
  man.parameters["ds"] = o.p.gamma == 0.0 ? 0.0 : ds;
  man.parameters["grid_extent"] = g.extent;
  man.parameters["grid_points"] = g.points;
  man.parameters["cells_per_bin"] = m;
  man.seed = static_cast<long long>(o.seed);
  const std::uint64_t total_steps = o.p.gamma == 0.0 ? e.n_steps * e.n_walkers : e.n_steps;
  man.results = {{"total_steps", total_steps}, {"outside_window", h.below + h.above}};
  man.outputs = {o.out, hist_path};
  man.write(manifest_path(o.manifest, o.out));
  out << "wrote " << o.out << " and " << hist_path << " (" << o.walkers << " walkers)\n";
  return kOk;
}

// --------------------------------------------------------------------- gp

struct GpOpts {
  double epsilon = 1.0;
  std::string mode = "tf-fgp";
  bool vortex = false;
  int dim = 3;
  double core_radius = 0.1;
  int samples = 601;
  double r_max = 1.2;
  double tol = 1e-8;
  double kinetic = 1e-6;
  int grid_n = 4096;
  double extent = 1.5;
  std::string out = "gp.csv";
  std::string manifest;
};

int cmd_gp(const GpOpts& o, const std::vector<std::string>& args, std::ostream& out) {
  const ExponentSet exps = physical_exponents(o.epsilon);
  const double two_beta = trap_two_beta(exps);
  TrapConfig trap;
  trap.dim = o.dim;
  trap.vortex = o.vortex;
  trap.core_radius = o.core_radius;
  trap.samples = o.samples;
  trap.r_max = o.r_max;
  trap.two_beta = two_beta;
  trap.vortex_exponent = 0.5 * exps.dim - 1.0 + 0.5 * exps.eta.value;
  trap.validate();

  TrapConfig gp_trap = trap;
  gp_trap.two_beta = 1.0;
  gp_trap.vortex_exponent = 0.5;  // eta = 0 in three dimensions
  const CondensateProfile gp = tf_profile_gp(gp_trap);

  CondensateProfile prof;
  if (o.mode == "tf-gp") prof = gp;
  else if (o.mode == "tf-fgp") prof = tf_profile_fgp(trap, exps);
  else if (o.mode == "full-fgp") {
    TrapSolverOptions so;
    so.kinetic = o.kinetic;
    so.points = o.grid_n;
    so.extent = o.extent;
    prof = solve_fgp_trap(trap, exps, CouplingConfig{}, o.tol, so);
  } else {
    throw ParameterError("mode must be tf-gp, tf-fgp or full-fgp");
  }

  CsvTable tab;
  tab.meta = {{"kind", "profile"},
              {"mode", o.mode},
              {"profile", to_string(prof.kind)},
              {"epsilon", format_double(o.epsilon)},
              {"dim", std::to_string(o.dim)},
              {"two_beta", format_double(prof.two_beta)},
              {"vortex", o.vortex ? "1" : "0"}};
  const bool with_gp = o.mode != "tf-gp";
  tab.header = {"r", "rho"};
  if (with_gp) tab.header.push_back("rho_gp");
  for (std::size_t i = 0; i < prof.r_values.size(); ++i) {
    std::vector<double> row{prof.r_values[i], prof.rho_values[i]};
    if (with_gp) row.push_back(gp.at(prof.r_values[i]));
    tab.rows.push_back(std::move(row));
  }
  {
    auto f = open_out(o.out);
    write_csv(f, tab);
  }
  RunManifest m = start_manifest("gp", args);
  m.parameters = {{"epsilon", o.epsilon}, {"mode", o.mode}, {"vortex", o.vortex}, {"dim", o.dim},
                  {"core_radius", o.core_radius}, {"samples", o.samples}, {"r_max", o.r_max}};
  if (o.mode == "full-fgp")
    m.parameters.update({{"tol", o.tol}, {"kinetic", o.kinetic}, {"grid_points", o.grid_n}, {"grid_extent", o.extent}});
  m.results = {{"two_beta", prof.two_beta},
               {"central_density", prof.central()},
               {"gp_central_density", gp.central()}};
  if (o.mode == "full-fgp") {
    m.results["iterations"] = prof.iterations;
    m.results["final_energy"] = prof.energy_history.back();
  }
  m.outputs = {o.out};
  m.write(manifest_path(o.manifest, o.out));
  out << "wrote " << o.out << " (2 beta = " << prof.two_beta << ")\n";
  return kOk;
}

// -------------------------------------------------------------- exponents

ojson field(const Exponent& e) { return {{"value", e.value}, {"source", to_string(e.source)}}; }

ojson exponent_report(double epsilon, double a) {
  const ExponentSet series = epsilon_expansion(epsilon);
  const ExponentSet phys = physical_exponents(epsilon);
  ojson j;
  j["epsilon"] = epsilon;
  j["dim"] = phys.dim;
  j["convention"] = to_string(phys.convention);
  j["eta"] = field(phys.eta);
  j["eta_series"] = series.eta_series;
  j["eta_quoted"] = quoted::eta;
  j["delta_series"] = series.delta_series;
  j["delta_hyperscaling"] = phys.delta.value;
  j["delta_quoted"] = quoted::delta;
  j["two_beta"] = phys.two_beta();
  j["beta"] = field(phys.beta);
  j["nu"] = field(phys.nu);
  j["nu_series"] = series.nu_series;
  j["nu_two_minus_eta"] = phys.nu_two_minus_eta();
  j["nu_two_minus_eta_quoted"] = quoted::nu_two_minus_eta;
  j["omega"] = field(phys.omega);
  j["lambda"] = field(phys.lam);
  j["z"] = field(phys.z_dyn);
  j["gamma"] = field(phys.gamma_t);
  j["g_star"] = quoted::g_star;
  j["g_c_nonrel"] = coupling_gc(phys, CouplingConfig{});
  j["g_c_nonrel_quoted"] = quoted::g_c_nonrel;
  j["g_c_rel"] = quoted::g_c_rel;
  j["appendix"] = {{"a", a}};
  try {
    const auto app = appendix_exponents(a, epsilon);
    j["appendix"]["gamma"] = app.gamma_t;
    j["appendix"]["z"] = app.z_dyn;
    const ExponentSet scaled = from_scaling(app.gamma_t, app.z_dyn);
    j["appendix"]["lambda"] = scaled.lam.value;
    j["appendix"]["eta"] = scaled.eta.value;
  } catch (const InputError& e) {
    j["appendix"]["note"] = e.what();
  }
  if (phys.dim >= 2.0 && std::abs(phys.dim - std::round(phys.dim)) < 1e-12) {
    const VortexProfile v = vortex_solution(phys, CouplingConfig{});
    j["vortex"] = {{"A", v.A}, {"A_dimension", v.A_dimension}, {"amplitude", v.a},
                   {"amplitude_relation", v.amplitude_relation},
                   {"amplitude_relation_quoted", quoted::vortex_amplitude}};
  }
  return j;
}

void print_table(const ojson& j, std::ostream& out) {
  out << std::left;
  for (const auto& [k, v] : j.items()) {
    if (v.is_object()) {
      if (v.contains("value")) {
        out << std::setw(34) << k << v["value"].get<double>() << "  (" << v["source"].get<std::string>() << ")\n";
      } else {
        for (const auto& [k2, v2] : v.items()) out << std::setw(34) << (k + "." + k2) << v2.dump() << '\n';
      }
    } else {
      out << std::setw(34) << k << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
  }
}

struct ExpOpts {
  double epsilon = 1.0;
  double a = 1.0;
  std::string out;
  std::string manifest;
};

int cmd_exponents(const ExpOpts& o, const std::vector<std::string>& args, std::ostream& out) {
  const ojson j = exponent_report(o.epsilon, o.a);
  print_table(j, out);
  out << j.dump(2) << '\n';
  if (!o.out.empty()) {
    {
      auto f = open_out(o.out);
      f << j.dump(2) << '\n';
    }
    RunManifest m = start_manifest("exponents", args);
    m.parameters = {{"epsilon", o.epsilon}, {"a", o.a}};
    m.results = j;
    m.outputs = {o.out};
    m.write(manifest_path(o.manifest, o.out));
  }
  return kOk;
}

// ----------------------------------------------------------- vortex-check

struct VortexOpts {
  double epsilon = 1.0;
  int grid_n = 1024;
  double extent = 10.0;
  double inner = 0.2;
  double outer = 0.5;
  std::string out;
  std::string manifest;
};

int cmd_vortex(const VortexOpts& o, const std::vector<std::string>& args, std::ostream& out) {
  const ExponentSet exps = physical_exponents(o.epsilon);
  const VortexCheck c = vortex_check(exps, CouplingConfig{}, o.grid_n, o.extent, {o.inner, o.outer, true});
  const double rel = std::abs(c.vortex.amplitude_relation - quoted::vortex_amplitude) / quoted::vortex_amplitude;
  ojson j;
  j["A"] = c.vortex.A;
  j["A_dimension"] = c.vortex.A_dimension;
  j["A_agreement"] = std::abs(c.vortex.A - c.vortex.A_dimension);
  j["amplitude"] = c.vortex.a;
  j["riesz_coefficient"] = c.vortex.riesz;
  j["amplitude_relation"] = c.vortex.amplitude_relation;
  j["amplitude_relation_quoted"] = quoted::vortex_amplitude;
  j["amplitude_relation_deviation"] = rel;
  j["amplitude_relation_within_10pct"] = rel <= 0.1;
  j["residual"] = {{"points", c.points_coarse}, {"value", c.residual_coarse}};
  j["residual_refined"] = {{"points", c.points_fine}, {"value", c.residual_fine}};
  j["refinement_ratio"] = c.residual_coarse / c.residual_fine;
  j["annulus"] = {o.inner, o.outer};
  out << j.dump(2) << '\n';
  if (!o.out.empty()) {
    {
      auto f = open_out(o.out);
      f << j.dump(2) << '\n';
    }
    RunManifest m = start_manifest("vortex-check", args);
    m.parameters = {{"epsilon", o.epsilon}, {"grid_points", o.grid_n}, {"grid_extent", o.extent},
                    {"inner", o.inner}, {"outer", o.outer}};
    m.results = j;
    m.outputs = {o.out};
    m.write(manifest_path(o.manifest, o.out));
  }
  return kOk;
}

// ---------------------------------------------------------------- compare

struct CompareOpts {
  std::string first, second;
  double significance = 0.01;
  bool require_pass = false;
  std::string out;
};

struct Binned {
  Histogram hist;
  GridSpec grid;
};

Histogram histogram_from_table(const CsvTable& t) {
  Histogram h;
  h.lo = t.meta_number("bin_lo");
  h.width = t.meta_number("bin_width");
  h.below = static_cast<std::uint64_t>(t.meta_number("below"));
  h.above = static_cast<std::uint64_t>(t.meta_number("above"));
  const int c = t.column("count");
  for (const auto& r : t.rows) h.counts.push_back(static_cast<std::uint64_t>(r[c]));
  return h;
}

GridSpec grid_from_table(const CsvTable& t) {
  return GridSpec{t.meta_number("grid_extent"), static_cast<int>(t.meta_number("grid_points")),
                  static_cast<int>(t.meta_number("dim"))};
}

void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (a.points != b.points || std::abs(a.extent - b.extent) > 1e-12 * std::max(a.extent, b.extent))
    throw InputError("files use different grids (extent " + format_double(a.extent) + " / " +
                     format_double(b.extent) + ", points " + std::to_string(a.points) + " / " +
                     std::to_string(b.points) + ")");
}

// Largest gap between two CDFs sampled at the same edges.
double max_gap(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0, ca = 0.0, cb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ca += a[i];
    cb += b[i];
    d = std::max(d, std::abs(ca - cb));
  }
  return d;
}

int cmd_compare(const CompareOpts& o, std::ostream& out) {
  CsvTable a, b;
  {
    auto f = open_in(o.first);
    a = read_csv(f);
  }
  {
    auto f = open_in(o.second);
    b = read_csv(f);
  }
  const std::string ka = a.find_meta("kind") ? *a.find_meta("kind") : "";
  const std::string kb = b.find_meta("kind") ? *b.find_meta("kind") : "";
  ojson j;
  j["first"] = o.first;
  j["second"] = o.second;
  j["significance"] = o.significance;
  bool pass = false;
  if (ka == "density" && kb == "density") {
    const DensityField fa = density_from_table(a), fb = density_from_table(b);
    if (fa.grid.dim != fb.grid.dim) throw InputError("files use different dimensions");
    require_same_grid(fa.grid, fb.grid);
    auto ma = fa.marginal(), mb = fb.marginal();
    for (auto& v : ma) v *= fa.grid.spacing();
    for (auto& v : mb) v *= fb.grid.spacing();
    const double d = max_gap(ma, mb);
    j["test"] = "cdf-distance";
    j["ks_statistic"] = d;
    double l1 = 0.0;
    for (std::size_t i = 0; i < fa.values.size(); ++i) l1 += std::abs(fa.values[i] - fb.values[i]);
    j["l1_distance"] = l1 * fa.grid.cell_volume();
    pass = d <= 1e-6;
  } else if ((ka == "histogram" && kb == "density") || (ka == "density" && kb == "histogram")) {
    const CsvTable& ht = ka == "histogram" ? a : b;
    const CsvTable& dt = ka == "histogram" ? b : a;
    const Histogram h = histogram_from_table(ht);
    const DensityField f = density_from_table(dt);
    require_same_grid(grid_from_table(ht), f.grid);
    const auto probs = bin_probabilities(f.marginal(), f.grid, h);
    const TestResult chi = chi_square_test(h, probs, o.significance);
    // Binned KS: empirical against model CDF at every bin edge.
    const double n = static_cast<double>(h.total());
    std::vector<double> emp{static_cast<double>(h.below) / n}, mod{0.0};
    double inside = 0.0;
    for (double p : probs) inside += p;
    mod[0] = 0.5 * std::max(0.0, 1.0 - inside);  // outside mass split evenly by symmetry
    for (std::size_t i = 0; i < h.bins(); ++i) {
      emp.push_back(static_cast<double>(h.counts[i]) / n);
      mod.push_back(probs[i]);
    }
    const double ks = max_gap(emp, mod);
    const double ks_crit = kolmogorov_critical(o.significance) / std::sqrt(n);
    j["test"] = "chi-square";
    j["chi_square"] = chi.statistic;
    j["dof"] = chi.dof;
    j["p_value"] = chi.p_value;
    j["chi_square_critical"] = chi.critical;
    j["ks_statistic"] = ks;
    j["ks_critical"] = ks_crit;
    pass = chi.pass(o.significance) && ks <= ks_crit;
  } else if (ka == "histogram" && kb == "histogram") {
    const Histogram ha = histogram_from_table(a), hb = histogram_from_table(b);
    require_same_grid(grid_from_table(a), grid_from_table(b));
    if (ha.bins() != hb.bins() || std::abs(ha.lo - hb.lo) > 1e-12 || std::abs(ha.width - hb.width) > 1e-12)
      throw InputError("histograms use different bins");
    const double na = static_cast<double>(ha.total()), nb = static_cast<double>(hb.total());
    std::vector<double> pa{ha.below / na}, pb{hb.below / nb};
    for (std::size_t i = 0; i < ha.bins(); ++i) {
      pa.push_back(ha.counts[i] / na);
      pb.push_back(hb.counts[i] / nb);
    }
    const double ks = max_gap(pa, pb);
    const double crit = kolmogorov_critical(o.significance) * std::sqrt((na + nb) / (na * nb));
    j["test"] = "two-sample-ks";
    j["ks_statistic"] = ks;
    j["ks_critical"] = crit;
    pass = ks <= crit;
  } else {
    throw InputError("compare needs density or histogram CSV files (kind metadata)");
  }
  j["pass"] = pass;
  out << j.dump(2) << '\n';
  if (!o.out.empty()) {
    auto f = open_out(o.out);
    f << j.dump(2) << '\n';
  }
  return (o.require_pass && !pass) ? 1 : kOk;
}

// ----------------------------------------------------------------- replay

int cmd_replay(const std::string& path, std::ostream& out, std::ostream& err) {
  nlohmann::json m;
  {
    auto f = open_in(path);
    try {
      m = nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
      throw InputError("bad manifest " + path + ": " + e.what());
    }
  }
  std::vector<std::string> args = m.at("argv").get<std::vector<std::string>>();
  std::map<std::string, std::string> expected;
  for (const auto& o : m.at("output_files")) expected[o.at("path")] = o.at("sha256");
  // Keep the original manifest intact; the replay writes its own next to it.
  args.push_back("--manifest");
  args.push_back(path + ".replay.json");
  std::ostringstream sink;
  const int code = run(args, sink, err);
  if (code != kOk) return code;
  bool same = true;
  for (const auto& [p, h] : expected) {
    const std::string now = sha256_file(p);
    out << (now == h ? "match    " : "MISMATCH ") << p << '\n';
    same = same && now == h;
  }
  return same ? kOk : kNumerical;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fraclab: fractional diffusion, Levy walks and fractional Gross-Pitaevskii tools", "fraclab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("fraclab ") + FRACLAB_VERSION);

  DensityOpts dens;
  auto* c_dens = app.add_subcommand("density", "probability density of the fractional Fokker-Planck equation");
  add_levy_flags(c_dens, dens.p, dens.time);
  c_dens->add_option("--grid-n", dens.grid_n, "points per axis (power of two, default automatic)");
  c_dens->add_option("--grid-extent", dens.extent, "grid half-width L (default automatic)");
  c_dens->add_option("--cutoff", dens.cutoff, "largest allowed spectrum at the Nyquist momentum")->capture_default_str();
  c_dens->add_option("--format", dens.format, "csv or binary")->check(CLI::IsMember({"csv", "binary"}))->capture_default_str();
  c_dens->add_option("--out", dens.out, "output file")->capture_default_str();
  c_dens->add_option("--manifest", dens.manifest, "manifest path (default <out>.manifest.json)");

  SampleOpts samp;
  auto* c_samp = app.add_subcommand("sample", "Monte Carlo Levy walks (subordinated when gamma > 0)");
  add_levy_flags(c_samp, samp.p, samp.time);
  c_samp->add_option("--walkers", samp.walkers, "number of walkers")->capture_default_str();
  c_samp->add_option("--seed", samp.seed, "random seed")->capture_default_str();
  c_samp->add_option("--ds", samp.ds, "pseudotime step (default 1e-3 t)");
  c_samp->add_option("--steps", samp.steps, "steps per walker when gamma = 0")->capture_default_str();
  c_samp->add_option("--grid-n", samp.grid_n, "histogram grid points (default automatic)");
  c_samp->add_option("--grid-extent", samp.extent, "histogram grid half-width (default automatic)");
  c_samp->add_option("--cells-per-bin", samp.cells_per_bin, "grid cells per histogram bin (odd)");
  c_samp->add_option("--window", samp.window, "histogram half-width");
  c_samp->add_option("--out", samp.out, "endpoint CSV")->capture_default_str();
  c_samp->add_option("--hist-out", samp.hist_out, "histogram CSV (default <out stem>.hist.csv)");
  c_samp->add_option("--manifest", samp.manifest, "manifest path (default <out>.manifest.json)");

  GpOpts gpo;
  auto* c_gp = app.add_subcommand("gp", "condensate profiles in a trap");
  c_gp->add_option("--epsilon", gpo.epsilon, "epsilon = 4 - D of the exponent set")->capture_default_str();
  c_gp->add_option("--mode", gpo.mode, "tf-gp, tf-fgp or full-fgp")
      ->check(CLI::IsMember({"tf-gp", "tf-fgp", "full-fgp"}))->capture_default_str();
  c_gp->add_flag("--vortex", gpo.vortex, "include a vortex at the trap centre");
  c_gp->add_option("--dim", gpo.dim, "trap dimension")->capture_default_str();
  c_gp->add_option("--core-radius", gpo.core_radius, "vortex core radius")->capture_default_str();
  c_gp->add_option("--samples", gpo.samples, "radial samples for TF profiles")->capture_default_str();
  c_gp->add_option("--r-max", gpo.r_max, "largest radius for TF profiles")->capture_default_str();
  c_gp->add_option("--tol", gpo.tol, "gradient-flow tolerance")->capture_default_str();
  c_gp->add_option("--kinetic", gpo.kinetic, "kinetic coefficient of the full solver")->capture_default_str();
  c_gp->add_option("--grid-n", gpo.grid_n, "full solver grid points")->capture_default_str();
  c_gp->add_option("--grid-extent", gpo.extent, "full solver grid half-width")->capture_default_str();
  c_gp->add_option("--out", gpo.out, "output CSV")->capture_default_str();
  c_gp->add_option("--manifest", gpo.manifest, "manifest path (default <out>.manifest.json)");

  ExpOpts expo;
  auto* c_exp = app.add_subcommand("exponents", "critical exponents at epsilon");
  c_exp->add_option("--epsilon", expo.epsilon, "epsilon in [0, 1]")->capture_default_str();
  c_exp->add_option("--a", expo.a, "one-loop coefficient of gamma = a epsilon")->capture_default_str();
  c_exp->add_option("--out", expo.out, "also write the JSON here");
  c_exp->add_option("--manifest", expo.manifest, "manifest path (default <out>.manifest.json)");

  VortexOpts vo;
  auto* c_vor = app.add_subcommand("vortex-check", "power-law vortex: exponents, amplitude, spectral residual");
  c_vor->add_option("--epsilon", vo.epsilon, "epsilon of the exponent set")->capture_default_str();
  c_vor->add_option("--grid-n", vo.grid_n, "coarse grid points per axis (the check also runs 2N)")->capture_default_str();
  c_vor->add_option("--grid-extent", vo.extent, "grid half-width L")->capture_default_str();
  c_vor->add_option("--inner", vo.inner, "annulus inner radius / L")->capture_default_str();
  c_vor->add_option("--outer", vo.outer, "annulus outer radius / L")->capture_default_str();
  c_vor->add_option("--out", vo.out, "also write the JSON report here");
  c_vor->add_option("--manifest", vo.manifest, "manifest path (default <out>.manifest.json)");

  CompareOpts co;
  auto* c_cmp = app.add_subcommand("compare", "compare histogram and density CSV files");
  c_cmp->add_option("first", co.first, "histogram or density CSV")->required();
  c_cmp->add_option("second", co.second, "histogram or density CSV")->required();
  c_cmp->add_option("--significance", co.significance, "test level")->capture_default_str();
  c_cmp->add_flag("--require-pass", co.require_pass, "exit 1 when the test fails");
  c_cmp->add_option("--out", co.out, "also write the JSON report here");

  std::string replay_path;
  auto* c_rep = app.add_subcommand("replay", "re-run a manifest and check output hashes");
  c_rep->add_option("manifest", replay_path, "manifest JSON")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*c_dens) return cmd_density(dens, args, out);
    if (*c_samp) return cmd_sample(samp, args, out);
    if (*c_gp) return cmd_gp(gpo, args, out);
    if (*c_exp) return cmd_exponents(expo, args, out);
    if (*c_vor) return cmd_vortex(vo, args, out);
    if (*c_cmp) return cmd_compare(co, out);
    if (*c_rep) return cmd_replay(replay_path, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace fraclab::cli
