#include "fraclab/fractional_gp.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "fraclab/errors.hpp"
#include "fraclab/special_functions.hpp"
#include "fraclab/spectral.hpp"

namespace fraclab {
namespace {

constexpr double kPi = std::numbers::pi;

double smooth_step(double t) {
  t = std::clamp(t, 0.0, 1.0);
  auto f = [](double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; };
  const double a = f(t), b = f(1.0 - t);
  return a / (a + b);
}

double vortex_factor(double r, double exponent, double rc) {
  const double a = std::pow(r, 2.0 * exponent);
  return a / (a + std::pow(rc, 2.0 * exponent));
}

double lam_of(const ExponentSet& exps) {
  if (exps.lam.known()) return exps.lam.value;
  if (exps.eta.known()) return 2.0 - exps.eta.value;
  throw ExponentError("lambda and eta are both unset");
}

// Mass of the (optionally vortex-decorated) TF shape on the unit ball.
double shape_mass(int dim, double two_beta, bool vortex, double exponent, double rc) {
  boost::math::quadrature::tanh_sinh<double> q;
  auto f = [&](double r) {
    double v = std::pow(r, dim - 1) * std::pow(std::max(0.0, 1.0 - r * r), two_beta);
    if (vortex) v *= vortex_factor(r, exponent, rc);
    return v;
  };
  return sphere_surface(dim) * q.integrate(f, 0.0, 1.0, 1e-13);
}

CondensateProfile tf_profile(const TrapConfig& trap, double two_beta, ProfileKind kind) {
  trap.validate();
  CondensateProfile p;
  p.dim = trap.dim;
  p.two_beta = two_beta;
  p.kind = trap.vortex ? ProfileKind::vortex : kind;
  const double rho0 = trap.n_total / shape_mass(trap.dim, two_beta, trap.vortex,
                                                trap.vortex_exponent, trap.core_radius);
  p.r_values.resize(trap.samples);
  p.rho_values.resize(trap.samples);
  for (int i = 0; i < trap.samples; ++i) {
    const double r = trap.r_max * i / (trap.samples - 1);
    double rho = r < 1.0 ? rho0 * std::pow(1.0 - r * r, two_beta) : 0.0;
    if (trap.vortex) rho *= vortex_factor(r, trap.vortex_exponent, trap.core_radius);
    p.r_values[i] = r;
    p.rho_values[i] = rho;
  }
  return p;
}

}  // namespace

void TrapConfig::validate() const {
  if (!(r_b > 0.0)) throw ParameterError("border radius must be positive");
  if (dim < 1 || dim > 3) throw ParameterError("trap dim must be 1, 2 or 3");
  if (!(n_total > 0.0)) throw ParameterError("particle number must be positive");
  if (!(two_beta > 0.0 && two_beta <= 2.0)) throw ParameterError("2 beta must lie in (0, 2]");
  if (vortex && !(core_radius > 0.0)) throw ParameterError("vortex core radius must be positive");
  if (vortex && !(vortex_exponent > 0.0)) throw ParameterError("vortex exponent must be positive");
  if (!(r_max > 0.0) || samples < 2) throw ParameterError("profile sampling needs r_max > 0 and 2+ samples");
}

std::string to_string(ProfileKind k) {
  switch (k) {
    case ProfileKind::gp_tf: return "gp-tf";
    case ProfileKind::fgp_tf: return "fgp-tf";
    case ProfileKind::fgp_full: return "fgp-full";
    case ProfileKind::vortex: return "vortex";
  }
  return "unknown";
}

double CondensateProfile::at(double r) const {
  if (r_values.empty()) return 0.0;
  if (r <= r_values.front()) return rho_values.front();
  if (r >= r_values.back()) return rho_values.back();
  const auto it = std::upper_bound(r_values.begin(), r_values.end(), r);
  const std::size_t j = static_cast<std::size_t>(it - r_values.begin());
  const double f = (r - r_values[j - 1]) / (r_values[j] - r_values[j - 1]);
  return rho_values[j - 1] + f * (rho_values[j] - rho_values[j - 1]);
}

double tf_central_density(int dim, double two_beta, double n_total) {
  // Unit-ball integral of (1 - r^2)^{2 beta}: S_D B(D/2, 2 beta + 1) / 2.
  const double b = std::exp(std::lgamma(0.5 * dim) + std::lgamma(two_beta + 1.0) -
                            std::lgamma(0.5 * dim + two_beta + 1.0));
  return n_total / (0.5 * sphere_surface(dim) * b);
}

CondensateProfile tf_profile_gp(const TrapConfig& trap) {
  return tf_profile(trap, 1.0, ProfileKind::gp_tf);
}

double trap_two_beta(const ExponentSet& exps) {
  if (exps.beta.known()) return exps.two_beta();
  if (exps.nu.known() && exps.eta.known()) return exps.nu.value * (exps.dim - 2.0 + exps.eta.value);
  throw ExponentError("2 beta needs beta, or nu and eta");
}

CondensateProfile tf_profile_fgp(const TrapConfig& trap, const ExponentSet& exps) {
  return tf_profile(trap, trap_two_beta(exps), ProfileKind::fgp_tf);
}

double gp_coupling(const CouplingConfig& coupling) {
  const double g = std::isnan(coupling.g_c) ? quoted::g_c_rel : coupling.g_c;
  if (!(g > 0.0)) throw ParameterError("g_c must be positive");
  return g;
}

VortexProfile vortex_solution(const ExponentSet& exps, const CouplingConfig& coupling) {
  if (!exps.eta.known() || !exps.delta.known()) throw ExponentError("vortex needs eta and delta");
  const double eta = exps.eta.value;
  const double delta = exps.delta.value;
  const double dh = hyperscaling_delta(exps.dim, eta);
  if (std::abs(delta - dh) > 1e-9 * std::max(1.0, dh)) {
    std::ostringstream os;
    os << "delta = " << delta << " differs from the hyperscaling value " << dh;
    throw ExponentError(os.str());
  }
  const double d_round = std::round(exps.dim);
  if (std::abs(exps.dim - d_round) > 1e-12 || d_round < 2)
    throw ExponentError("vortex needs an integer dimension of at least 2");
  VortexProfile v;
  v.dim_perp = static_cast<int>(d_round) - 1;
  v.A = (2.0 - eta) / (delta - 1.0);
  v.A_dimension = 0.5 * exps.dim - 1.0 + 0.5 * eta;
  if (std::abs(v.A - v.A_dimension) > 1e-12) {
    std::ostringstream os;
    os.precision(17);
    os << "vortex exponents disagree: (2-eta)/(delta-1) = " << v.A
       << ", D/2-1+eta/2 = " << v.A_dimension;
    throw ExponentError(os.str());
  }
  v.lam = lam_of(exps);
  v.riesz = riesz_power_coeff({v.dim_perp, v.A, v.lam});
  v.amplitude_relation = -v.riesz;
  const double mu = coupling.mu_scale;
  if (!(mu > 0.0)) throw ParameterError("mass scale must be positive");
  v.coupling = (delta + 1.0) * gp_coupling(coupling) / (4.0 * std::pow(mu, eta));
  if (!(v.amplitude_relation > 0.0))
    throw ExponentError("power-law vortex needs a negative Riesz coefficient");
  // K a^{delta-1} = -C
  v.a = std::pow(v.amplitude_relation / v.coupling, 1.0 / (delta - 1.0));
  return v;
}

std::vector<double> vortex_field(const VortexProfile& v, const GridSpec& grid, double core_cells,
                                 double window_start, double window_end) {
  grid.validate();
  if (grid.dim != v.dim_perp) throw ParameterError("vortex grid dim must equal the transverse dimension");
  if (!(core_cells > 0.0)) throw ParameterError("core width must be positive");
  if (!(0.0 < window_start && window_start < window_end && window_end <= 1.0))
    throw ParameterError("window must satisfy 0 < start < end <= 1");
  SpectralGrid sg(grid);
  const double rc = core_cells * grid.spacing();
  const double r1 = window_start * grid.extent;
  const double r2 = window_end * grid.extent;
  const double plateau = v.a * std::pow(r2, -v.A);
  std::vector<double> psi(sg.size());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double r = sg.radius(i);
    const double core = v.a * std::pow(r * r + rc * rc, -0.5 * v.A);
    const double w = 1.0 - smooth_step((r - r1) / (r2 - r1));
    psi[i] = w * core + (1.0 - w) * plateau;
  }
  return psi;
}

FgpTerms fgp_operator(std::span<const double> psi, const ExponentSet& exps,
                      const CouplingConfig& coupling, const GridSpec& grid) {
  if (!exps.delta.known() || !exps.eta.known()) throw ExponentError("operator needs eta and delta");
  SpectralGrid sg(grid);
  if (psi.size() != sg.size()) throw ParameterError("field size does not match grid");
  for (double v : psi)
    if (!std::isfinite(v)) throw AnnulusError("field is not finite on the grid; exclude the origin");
  const double lam = lam_of(exps);
  const double delta = exps.delta.value;
  const double k = (delta + 1.0) * gp_coupling(coupling) /
                   (4.0 * std::pow(coupling.mu_scale, exps.eta.value));
  FgpTerms t;
  t.kinetic.resize(psi.size());
  sg.apply_multiplier(psi, [lam](double p) { return p == 0.0 ? 0.0 : std::pow(p, lam); }, t.kinetic);
  t.total.resize(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i)
    t.total[i] = t.kinetic[i] + k * std::pow(std::abs(psi[i]), delta - 1.0) * psi[i];
  return t;
}

double fgp_residual(std::span<const double> psi, const ExponentSet& exps,
                    const CouplingConfig& coupling, const GridSpec& grid, const Annulus& annulus) {
  if (annulus.singular && !(annulus.inner > 0.0))
    throw AnnulusError("annulus of a singular field must exclude the origin");
  if (!(annulus.outer > annulus.inner)) throw AnnulusError("annulus outer radius must exceed inner");
  if (std::all_of(psi.begin(), psi.end(), [](double v) { return v == 0.0; })) return 0.0;
  const FgpTerms t = fgp_operator(psi, exps, coupling, grid);
  SpectralGrid sg(grid);
  const double lo = annulus.inner * grid.extent;
  const double hi = annulus.outer * grid.extent;
  double num = 0.0, den = 0.0;
  std::size_t used = 0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double r = sg.radius(i);
    if (r < lo || r > hi) continue;
    num += t.total[i] * t.total[i];
    den += t.kinetic[i] * t.kinetic[i];
    ++used;
  }
  if (used == 0) throw AnnulusError("annulus contains no grid points");
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::sqrt(num / den);
}

VortexCheck vortex_check(const ExponentSet& exps, const CouplingConfig& coupling, int points,
                         double extent, const Annulus& annulus) {
  VortexCheck c;
  c.vortex = vortex_solution(exps, coupling);
  c.extent = extent;
  c.points_coarse = points;
  c.points_fine = 2 * points;
  for (int n : {points, 2 * points}) {
    const GridSpec g{extent, n, c.vortex.dim_perp};
    const auto psi = vortex_field(c.vortex, g);
    (n == points ? c.residual_coarse : c.residual_fine) = fgp_residual(psi, exps, coupling, g, annulus);
  }
  return c;
}

CondensateProfile solve_fgp_trap(const TrapConfig& trap, const ExponentSet& exps,
                                 const CouplingConfig& coupling, double tol,
                                 const TrapSolverOptions& opt) {
  (void)coupling;  // the trap problem is scaled so g_c drops out; kept for the interface
  trap.validate();
  if (!(tol > 0.0)) throw ParameterError("tolerance must be positive");
  if (!(opt.kinetic > 0.0) || !(opt.time_step > 0.0) || !(opt.extent > 1.0))
    throw ParameterError("solver needs kinetic > 0, time step > 0 and extent > 1");
  const double two_beta = trap_two_beta(exps);
  const double lam = lam_of(exps);
  const double q = 1.0 / two_beta;
  const int dim = trap.dim;
  const double rho0 = tf_central_density(dim, two_beta, trap.n_total);
  const double g = std::pow(rho0, -q);  // g rho0^q = 1 puts the border at r = 1

  // D = 1, 3: one line; D = 3 evolves u = r psi (odd), whose 1-D fractional
  // Laplacian is r times the radial 3-D one.
  const GridSpec grid{opt.extent, opt.points, dim == 2 ? 2 : 1};
  SpectralGrid sg(grid);
  const std::size_t n = sg.size();
  const double h = grid.spacing();
  const bool radial3 = dim == 3;
  std::vector<double> r(n), weight(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = sg.radius(i);
    weight[i] = radial3 ? 2.0 * kPi * r[i] * r[i] * h : grid.cell_volume();
  }
  const double kw = radial3 ? 2.0 * kPi * h : grid.cell_volume();  // measure for the evolved variable
  const std::vector<double> kin_table =
      sg.multiplier_table([lam](double p) { return p == 0.0 ? 0.0 : std::pow(p, lam); });

  auto density = [&](const std::vector<double>& w, std::size_t i) {
    if (!radial3) return w[i] * w[i];
    return r[i] > 0.0 ? (w[i] / r[i]) * (w[i] / r[i]) : 0.0;
  };
  auto normalize = [&](std::vector<double>& w) {
    double s = 0.0;
    for (double v : w) s += v * v;
    const double f = std::sqrt(trap.n_total / (kw * s));
    for (double& v : w) v *= f;
  };
  std::vector<double> kin(n);
  auto energy = [&](const std::vector<double>& w) {
    sg.apply_table(w, kin_table, kin);
    double e_kin = 0.0, e_pot = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      e_kin += w[i] * kin[i];
      const double rho = density(w, i);
      e_pot += weight[i] * (r[i] * r[i] * rho + g / (q + 1.0) * std::pow(rho, q + 1.0));
    }
    return opt.kinetic * kw * e_kin + e_pot;
  };

  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double psi = std::sqrt(rho0 * std::pow(std::max(0.0, 1.0 - r[i] * r[i]), two_beta));
    w[i] = radial3 ? psi * (grid.coordinate(static_cast<int>(i)) ) : psi;
  }
  normalize(w);

  CondensateProfile out;
  out.kind = ProfileKind::fgp_full;
  out.dim = dim;
  out.two_beta = two_beta;
  double e_old = energy(w);
  out.energy_history.push_back(e_old);
  double tau = opt.time_step;
  std::vector<double> f(n), trial(n);
  std::vector<double> denom_table(n);
  double denom_tau = -1.0;
  bool converged = false;
  double change = 0.0;
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    if (tau != denom_tau) {
      for (std::size_t i = 0; i < n; ++i) denom_table[i] = 1.0 / (1.0 + tau * opt.kinetic * kin_table[i]);
      denom_tau = tau;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double rho = density(w, i);
      f[i] = w[i] - tau * (r[i] * r[i] + g * std::pow(rho, q)) * w[i];
    }
    sg.apply_table(f, denom_table, trial);
    normalize(trial);
    const double e_new = energy(trial);
    if (e_new > e_old + 1e-13 * std::abs(e_old)) {
      tau *= 0.5;
      if (tau < 1e-10) throw ConvergenceError("gradient flow step collapsed while the energy still rises");
      continue;
    }
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) diff += (trial[i] - w[i]) * (trial[i] - w[i]);
    change = std::sqrt(kw * diff / trap.n_total) / tau;
    w.swap(trial);
    e_old = e_new;
    out.energy_history.push_back(e_new);
    tau = std::min(opt.time_step, tau * 1.25);
    if (change < tol) {
      converged = true;
      break;
    }
  }
  out.iterations = it + 1;
  if (!converged) {
    std::ostringstream os;
    os << "gradient flow did not converge in " << opt.max_iterations << " iterations: L2 change "
       << change << " per unit step (tolerance " << tol << "), energy " << e_old << ", step " << tau;
    throw ConvergenceError(os.str());
  }

  // Radial profile along the positive first axis.
  const int mid = grid.origin_index();
  const std::size_t stride = dim == 2 ? static_cast<std::size_t>(grid.points) : 1;
  const std::size_t row = dim == 2 ? static_cast<std::size_t>(mid) * grid.points : 0;
  for (int j = mid; j < grid.points; ++j) {
    const std::size_t i = dim == 2 ? static_cast<std::size_t>(j) + row : static_cast<std::size_t>(j);
    (void)stride;
    out.r_values.push_back(grid.coordinate(j));
    out.rho_values.push_back(density(w, i));
  }
  if (radial3) {
    // psi(0) = u'(0), fourth-order central difference.
    const auto u = [&](int k) { return w[static_cast<std::size_t>(mid + k)]; };
    const double d0 = (8.0 * (u(1) - u(-1)) - (u(2) - u(-2))) / (12.0 * h);
    out.rho_values[0] = d0 * d0;
  }
  if (trap.vortex) {
    for (std::size_t i = 0; i < out.r_values.size(); ++i)
      out.rho_values[i] *= vortex_factor(out.r_values[i], trap.vortex_exponent, trap.core_radius);
    // Renormalize on the radial samples (trapezoid in r^{D-1} dr).
    double m = 0.0;
    for (std::size_t i = 1; i < out.r_values.size(); ++i) {
      const double a = std::pow(out.r_values[i - 1], dim - 1) * out.rho_values[i - 1];
      const double b = std::pow(out.r_values[i], dim - 1) * out.rho_values[i];
      m += 0.5 * (a + b) * (out.r_values[i] - out.r_values[i - 1]);
    }
    m *= sphere_surface(dim);
    for (double& v : out.rho_values) v *= trap.n_total / m;
    out.kind = ProfileKind::vortex;
  }
  return out;
}

double wegner_correction(double xi, const ExponentSet& exps, double c) {
  if (!(xi > 0.0)) throw DomainError("coherence length must be positive");
  const double omega = exps.omega.known() ? exps.omega.value : quoted::omega;
  return 1.0 + c * std::pow(xi, -omega);
}

double wegner_kinetic_factor(double xi, double p, const ExponentSet& exps, double c) {
  if (!(xi > 0.0)) throw DomainError("coherence length must be positive");
  if (!(p > 0.0)) throw DomainError("momentum must be positive");
  const double omega = exps.omega.known() ? exps.omega.value : quoted::omega;
  return 1.0 + c * std::pow(xi, -omega) * std::pow(p, -omega);
}

double coherence_length(double reduced_temperature, const ExponentSet& exps, double xi0) {
  if (reduced_temperature == 0.0 || !std::isfinite(reduced_temperature))
    throw DomainError("reduced temperature must be finite and nonzero");
  if (!exps.nu.known()) throw ExponentError("coherence length needs nu");
  return xi0 * std::pow(std::abs(reduced_temperature), -exps.nu.value);
}

double border_exponent(const CondensateProfile& p, double r_lo, double r_hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i = 0; i < p.r_values.size(); ++i) {
    const double r = p.r_values[i];
    if (r < r_lo || r > r_hi || r >= 1.0 || p.rho_values[i] <= 0.0) continue;
    const double x = std::log(1.0 - r * r);
    const double y = std::log(p.rho_values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 3) throw InputError("border fit needs at least three profile samples in range");
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace fraclab
