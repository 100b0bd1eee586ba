#pragma once

#include <span>
#include <vector>

#include "fraclab/levy_params.hpp"

namespace fraclab {

/// Probability density sampled on a periodic grid at one physical time.
struct DensityField {
  GridSpec grid;
  double t = 0.0;
  std::vector<double> values;  // row-major, last axis fastest
  LevyParams params;
  /// Analytic mass of the power-law tail outside the inscribed ball |x| < L.
  /// The periodic solution folds it back into the box almost uniformly.
  double tail_mass = 0.0;

  double mass() const;
  double min_value() const;
  /// Marginal density of the first coordinate, one value per grid column.
  std::vector<double> marginal() const;
};

struct SolveOptions {
  /// Largest allowed |phi(p_nyquist)| / phi(0).
  double spectral_cutoff = 1e-6;
  /// Most negative allowed grid value before RingingError.
  double ringing_tolerance = 1e-6;
};

/// 1 / (p4^{1-gamma} + D_lam |p|^lam). Throws DomainError at p = 0, p4 = 0.
double greens_momentum(std::span<const double> p, double p4, const LevyParams& params);

/// t^{-gamma} E_{1-gamma,1-gamma}(-D_lam |p|^lam t^{1-gamma}): the inverse
/// Laplace transform of greens_momentum in p4. Its p = 0 value is
/// t^{-gamma} / Gamma(1 - gamma), so for gamma > 0 it is not a probability.
double propagator_momentum_time(std::span<const double> p, double t, const LevyParams& params);

/// E_{1-gamma,1}(-D_lam |p|^lam t^{1-gamma}), the characteristic function of
/// the walker position at physical time t. Equals the order-gamma fractional
/// time integral of propagator_momentum_time and reduces to it at gamma = 0.
double characteristic_function(double p_abs, double t, const LevyParams& params);

/// |p|^{-2+eta}. Throws DomainError at p = 0.
double static_correlation(std::span<const double> p, double eta);

/// Coefficient c of the large-|x| tail P ~ c |x|^{-D-lam}; zero at lam = 2.
double tail_coefficient(const LevyParams& params, double t);

/// Mass of that tail outside the ball of radius r.
double tail_mass_beyond(const LevyParams& params, double t, double r);

/// Smallest |p| with phi(p) <= cutoff * phi(0).
double spectral_cutoff_momentum(const LevyParams& params, double t, double cutoff);

/// Grid whose extent keeps tail_mass_beyond below `tail_tol` and whose
/// Nyquist momentum passes the spectral cutoff, with spacing at most 1/20 of
/// the decay scale, subject to a total point
/// budget (the extent shrinks first when the budget binds).
GridSpec auto_grid(const LevyParams& params, double t, double tail_tol = 1e-4,
                   double cutoff = 1e-6, std::size_t max_points = std::size_t{1} << 22);

/// P(x, t) on `grid` by Fourier synthesis of characteristic_function,
/// symmetrized over reflections and axis permutations.
/// Throws GridResolutionError (with a suggested N) when the spectrum is not
/// resolved and RingingError when the result goes negative.
DensityField solve_density(const LevyParams& params, double t, const GridSpec& grid,
                           const SolveOptions& options = {});

}  // namespace fraclab
