#include "fraclab/ffp_solver.hpp"

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

double norm(std::span<const double> p) {
  double s = 0.0;
  for (double v : p) {
    if (!std::isfinite(v)) throw DomainError("momentum must be finite");
    s += v * v;
  }
  return std::sqrt(s);
}

void check_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("time must be positive");
}

std::size_t pow_size(int n, int dim) {
  std::size_t s = 1;
  for (int a = 0; a < dim; ++a) s *= static_cast<std::size_t>(n);
  return s;
}

int next_pow2(double x) {
  int n = 64;
  while (n < x && n < (1 << 28)) n *= 2;
  return n;
}

}  // namespace

double DensityField::mass() const {
  return std::accumulate(values.begin(), values.end(), 0.0) * grid.cell_volume();
}

double DensityField::min_value() const {
  return values.empty() ? 0.0 : *std::min_element(values.begin(), values.end());
}

std::vector<double> DensityField::marginal() const {
  const int n = grid.points;
  const std::size_t inner = values.size() / n;
  const double w = std::pow(grid.spacing(), grid.dim - 1);
  std::vector<double> out(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < inner; ++i) s += values[j * inner + i];
    out[j] = s * w;
  }
  return out;
}

double greens_momentum(std::span<const double> p, double p4, const LevyParams& params) {
  params.validate();
  const double k = norm(p);
  if (!std::isfinite(p4) || p4 < 0.0) throw DomainError("p4 must be non-negative");
  if (k == 0.0 && p4 == 0.0) throw DomainError("Green function is infinite at p = 0, p4 = 0");
  return 1.0 / (std::pow(p4, 1.0 - params.gamma) + params.d_lam * std::pow(k, params.lam));
}

double propagator_momentum_time(std::span<const double> p, double t, const LevyParams& params) {
  params.validate();
  check_time(t);
  const double a = params.time_order();
  const double z = -params.d_lam * std::pow(norm(p), params.lam) * std::pow(t, a);
  if (params.gamma == 0.0) return std::exp(z);
  return std::pow(t, -params.gamma) * ml_eval({a, a, z});
}

double characteristic_function(double p_abs, double t, const LevyParams& params) {
  const double a = params.time_order();
  const double z = -params.d_lam * std::pow(p_abs, params.lam) * std::pow(t, a);
  if (params.gamma == 0.0) return std::exp(z);
  return ml_eval({a, 1.0, z});
}

double static_correlation(std::span<const double> p, double eta) {
  const double k = norm(p);
  if (k == 0.0) throw DomainError("static correlation diverges at p = 0");
  return std::pow(k, -2.0 + eta);
}

double tail_coefficient(const LevyParams& params, double t) {
  params.validate();
  check_time(t);
  const double lam = params.lam;
  const double a = params.time_order();
  const int d = params.dim;
  // Small-p expansion phi ~ 1 - D t^a |p|^lam / Gamma(1 + a), times the
  // position-space kernel of |p|^lam.
  const double riesz = lam * std::pow(2.0, lam - 1.0) * std::tgamma(0.5 * (lam + d)) /
                       std::pow(kPi, 0.5 * d) * rgamma(1.0 - 0.5 * lam);
  return params.d_lam * std::pow(t, a) * rgamma(1.0 + a) * riesz;
}

double tail_mass_beyond(const LevyParams& params, double t, double r) {
  if (!(r > 0.0)) throw DomainError("radius must be positive");
  return tail_coefficient(params, t) * sphere_surface(params.dim) * std::pow(r, -params.lam) /
         params.lam;
}

double spectral_cutoff_momentum(const LevyParams& params, double t, double cutoff) {
  params.validate();
  check_time(t);
  if (!(cutoff > 0.0 && cutoff < 1.0)) throw ParameterError("cutoff must lie in (0, 1)");
  double lo = 0.0;
  double hi = 1.0 / params.decay_scale(t);
  while (characteristic_function(hi, t, params) > cutoff) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) throw GridResolutionError("spectrum does not decay to the cutoff", 0);
  }
  for (int i = 0; i < 60 && hi - lo > 1e-6 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (characteristic_function(mid, t, params) > cutoff ? lo : hi) = mid;
  }
  return hi;
}

GridSpec auto_grid(const LevyParams& params, double t, double tail_tol, double cutoff,
                   std::size_t max_points) {
  params.validate();
  check_time(t);
  if (params.dim > 3) throw ParameterError("grid dim must be 1, 2 or 3");
  // Spacing at most 1/20 of the decay scale, so piecewise-linear bin
  // integrals of the peak stay accurate at Monte Carlo resolution.
  const double p_need =
      std::max(spectral_cutoff_momentum(params, t, cutoff), kPi / (0.05 * params.decay_scale(t)));
  double extent = 12.0 * params.decay_scale(t);
  const double c = tail_coefficient(params, t);
  if (c > 0.0) {
    const double r = std::pow(c * sphere_surface(params.dim) / (params.lam * tail_tol),
                              1.0 / params.lam);
    extent = std::max(extent, r);
  }
  int n = next_pow2(2.0 * extent * p_need / kPi);
  while (pow_size(n, params.dim) > max_points && n > 64) n /= 2;
  // Keep the Nyquist momentum; give up extent if the budget binds.
  extent = std::min(extent, kPi * n / (2.0 * p_need));
  return GridSpec{extent, n, params.dim};
}

DensityField solve_density(const LevyParams& params, double t, const GridSpec& grid,
                           const SolveOptions& options) {
  params.validate();
  check_time(t);
  grid.validate();
  if (grid.dim != params.dim) throw ParameterError("grid dim must equal params dim");
  if (params.gamma > 0.5) throw ParameterError("gamma above 0.5 is not supported by the solver");

  const double phi_nyq = characteristic_function(grid.nyquist(), t, params);
  if (phi_nyq > options.spectral_cutoff) {
    int suggested = grid.points;
    while (suggested < (1 << 28) &&
           characteristic_function(kPi * suggested / (2.0 * grid.extent), t, params) >
               options.spectral_cutoff)
      suggested *= 2;
    std::ostringstream os;
    os << "spectrum at the Nyquist momentum " << grid.nyquist() << " is " << phi_nyq
       << " (cutoff " << options.spectral_cutoff << "); use at least " << suggested << " points";
    throw GridResolutionError(os.str(), suggested);
  }

  SpectralGrid sg(grid);
  DensityField out;
  out.grid = grid;
  out.t = t;
  out.params = params;
  out.values = sg.synthesize([&](double p) { return characteristic_function(p, t, params); });
  sg.symmetrize(out.values);
  out.tail_mass = tail_mass_beyond(params, t, grid.extent);

  const double lowest = out.min_value();
  if (lowest < -options.ringing_tolerance) {
    std::ostringstream os;
    os << "density reaches " << lowest << "; increase the grid extent (now " << grid.extent << ")";
    throw RingingError(os.str());
  }
  return out;
}

}  // namespace fraclab
